#!/usr/bin/env python3
"""Writes the synthetic agglutinative toy corpus under data/toy/.

Five stems and four suffixes. Training words are the bare stems, all twenty
stem+suffix words and fifteen stem+suffix+suffix words (40 in total). The
held-out words are the five stems with an unseen suffix pair and five unseen
stems with one known suffix each. Embeddings are 16-dimensional and
clustered by stem; held-out words have no vectors.
"""

import os
import sys

import numpy as np

STEMS = ["kitap", "kalem", "defter", "okul", "sınıf"]
SUFFIXES = ["lar", "dan", "im", "ca"]
DOUBLES = [("lar", "dan"), ("lar", "im"), ("im", "dan")]
HELDOUT_DOUBLE = ("ca", "lar")
NEW_STEMS = ["bardak", "pencere", "kapı", "sandalye", "tahta"]
DISTRACTORS = ["ve", "bir", "ama", "gibi", "daha", "zaman", "sonra", "nasıl",
               "burada", "şimdi"]
DIM = 16


def main(out_dir):
    rng = np.random.default_rng(20160601)
    os.makedirs(out_dir, exist_ok=True)

    train, heldout = [], []
    for i, stem in enumerate(STEMS):
        train.append((stem, [stem]))
        for suf in SUFFIXES:
            train.append((stem + suf, [stem, suf]))
        for a, b in DOUBLES:
            train.append((stem + a + b, [stem, a, b]))
        heldout.append((stem + "".join(HELDOUT_DOUBLE), [stem, *HELDOUT_DOUBLE]))
    for i, stem in enumerate(NEW_STEMS):
        suf = SUFFIXES[i % len(SUFFIXES)]
        heldout.append((stem + suf, [stem, suf]))
    assert len(train) == 40 and len(heldout) == 10

    centers = {s: rng.normal(size=DIM) for s in STEMS}
    suffix_dirs = {s: rng.normal(size=DIM) for s in SUFFIXES}
    vectors = []
    for word, morphs in train:
        v = centers[morphs[0]] + 0.3 * rng.normal(size=DIM)
        for m in morphs[1:]:
            v = v + 0.25 * suffix_dirs[m]
        vectors.append((word, v))
    for word in DISTRACTORS:
        vectors.append((word, rng.normal(size=DIM)))

    with open(os.path.join(out_dir, "embeddings.txt"), "w", encoding="utf-8") as f:
        f.write(f"{len(vectors)} {DIM}\n")
        for word, v in vectors:
            f.write(word + " " + " ".join(f"{x:.6f}" for x in v) + "\n")

    with open(os.path.join(out_dir, "wordlist.tsv"), "w", encoding="utf-8") as f:
        for word, morphs in train:
            freq = {1: 60, 2: 15, 3: 4}[len(morphs)] + int(rng.integers(0, 10))
            f.write(f"{freq}\t{word}\n")
        for word in DISTRACTORS:
            f.write(f"{100 + int(rng.integers(0, 50))}\t{word}\n")

    def write_gold(name, rows):
        with open(os.path.join(out_dir, name), "w", encoding="utf-8") as f:
            for word, morphs in rows:
                f.write(word + "\t" + " ".join(morphs) + "\n")

    write_gold("gold.tsv", train + heldout + [(w, [w]) for w in DISTRACTORS])
    write_gold("heldout.tsv", heldout)


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else
         os.path.join(os.path.dirname(__file__), "..", "data", "toy"))
