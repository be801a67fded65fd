#!/usr/bin/env python3
"""Standalone evaluator of the NSim similarity formula.

Transcribes the formula directly over dense vectors, with no shared code
with the C++ library. Used to produce the frozen expected values asserted
by the similarity tests and the acceptance suite.

    NSim(q, t) = sum_i(tc_i * qhc * q_i * t_i)
                 / ( sqrt(sum_i (tc_i/qhc)^2) + sqrt(sum_i q_i^2) * sqrt(sum_i t_i^2) )

qhc is the number of distinct query terms present in the document, applied
as a scalar at every index. The tc sum ranges over the document support,
the q and t norms over their own supports. qhc == 0 yields 0.
"""

import math


def nsim(q, t, tc, qhc):
    assert len(t) == len(tc)
    if qhc == 0:
        return 0.0
    num = sum(tc[i] * qhc * q[i] * t[i] for i in range(min(len(q), len(t))))
    tc_norm = math.sqrt(sum((c / qhc) ** 2 for c in tc if c != 0))
    q_norm = math.sqrt(sum(x * x for x in q))
    t_norm = math.sqrt(sum(x * x for x in t))
    den = tc_norm + q_norm * t_norm
    return num / den if den > 0 else 0.0


def main():
    cases = [
        # (name, q, t, tc, qhc)
        ("two_term_tf", [1.0, 1.0], [2.0, 1.0], [2, 1], 2),
        ("no_hit", [1.0, 1.0], [0.0, 0.0], [0, 0], 0),
        ("single_term", [1.0], [1.0], [1], 1),
    ]
    for name, q, t, tc, qhc in cases:
        print(f"{name}: {nsim(q, t, tc, qhc):.12f}")


if __name__ == "__main__":
    main()
