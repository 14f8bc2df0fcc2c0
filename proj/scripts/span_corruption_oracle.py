#!/usr/bin/env python3
"""Reference generator for span-corruption golden fixtures.

Independent reimplementation of the corruption algorithm (SplitMix64,
multiply-shift bounded sampling, Fisher-Yates gap shuffle, leftmost-heavy
span lengths). Writes tests/data/corrupt_golden.json with frozen expected
outputs; the C++ tests must reproduce them bit for bit.
"""

import json
import pathlib

MASK = (1 << 64) - 1

PAD_ID, EOS_ID, UNK_ID = 0, 1, 2
FIRST_SENTINEL = 3


class SplitMix64:
    def __init__(self, seed):
        self.state = seed & MASK

    def next(self):
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def next_below(self, n):
        return (self.next() * n) >> 64

    def shuffle(self, v):
        for i in range(len(v), 1, -1):
            j = self.next_below(i)
            v[i - 1], v[j] = v[j], v[i - 1]


def llround(x):
    # C++ llround: round half away from zero.
    import math
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def corrupt(token_ids, rate, mean_span, max_seq_len, seed):
    n = len(token_ids)
    assert 0 < n <= max_seq_len
    masked = max(1, min(llround(rate * n), n))
    num_spans = max(1, min(llround(masked / max(mean_span, 1.0)), masked))
    kept = n - masked
    gaps = kept + 1
    num_spans = min(num_spans, gaps)

    lengths = [masked // num_spans] * num_spans
    for i in range(masked % num_spans):
        lengths[i] += 1

    gap_ids = list(range(gaps))
    SplitMix64(seed).shuffle(gap_ids)
    gap_ids = sorted(gap_ids[:num_spans])

    input_ids, target_ids = [], []
    orig = 0
    span = 0
    for kept_pos in range(kept + 1):
        if span < num_spans and gap_ids[span] == kept_pos:
            sid = FIRST_SENTINEL + span
            input_ids.append(sid)
            target_ids.append(sid)
            for _ in range(lengths[span]):
                target_ids.append(token_ids[orig])
                orig += 1
            span += 1
        if kept_pos < kept:
            input_ids.append(token_ids[orig])
            orig += 1
    target_ids.append(EOS_ID)
    return input_ids, target_ids


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    cases = []

    # The 10-token case: rate 0.15 -> 2 masked, one span of 2.
    cases.append({
        "name": "ten_tokens_seed42",
        "ids": list(range(200, 210)),
        "rate": 0.15, "mean_span": 3.0, "max_len": 512, "seed": 42,
    })
    # A 100-token case.
    cases.append({
        "name": "hundred_tokens_seed42",
        "ids": list(range(1000, 1100)),
        "rate": 0.15, "mean_span": 3.0, "max_len": 512, "seed": 42,
    })
    # Full-length 512 with a different shape of ids.
    cases.append({
        "name": "full_512_seed42",
        "ids": [(7 * i + 103) % 32000 for i in range(512)
                ] ,
        "rate": 0.15, "mean_span": 3.0, "max_len": 512, "seed": 42,
    })
    # Minimum-mask floor: 4 tokens at a rate rounding to zero.
    cases.append({
        "name": "four_tokens_min_floor",
        "ids": [500, 501, 502, 503],
        "rate": 0.01, "mean_span": 3.0, "max_len": 512, "seed": 42,
    })

    # Sentinel ids must never appear in the synthetic inputs.
    for c in cases:
        assert all(i != EOS_ID and not (FIRST_SENTINEL <= i < FIRST_SENTINEL + 100)
                   for i in c["ids"]), c["name"]
        inp, tgt = corrupt(c["ids"], c["rate"], c["mean_span"], c["max_len"], c["seed"])
        c["expected_input_ids"] = inp
        c["expected_target_ids"] = tgt

    out = root / "tests" / "data" / "corrupt_golden.json"
    with open(out, "w", encoding="utf-8") as f:
        json.dump(cases, f, indent=1)
        f.write("\n")
    print(f"wrote {len(cases)} cases to {out}")


if __name__ == "__main__":
    main()
