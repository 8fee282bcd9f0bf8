"""Smoke test for the compiled `dtqw` extension.

Build and run from the repository root:

    cargo build --release -p dtqw-py --features extension-module
    cp target/release/libdtqw.so crates/py/python/dtqw.so
    python3 crates/py/python/smoke_test.py
"""

import sys

import dtqw


def main():
    # the 4-cycle returns to the origin every 8 steps
    for t in (0, 8, 16):
        p = dtqw.simulate(dtqw.WalkConfig(2, t)).position_distribution(2)
        assert abs(p[0] - 1.0) < 1e-9, (t, p)

    for scheme in dtqw.SCHEMES:
        cfg = dtqw.WalkConfig(2, 5, scheme=scheme)
        p = dtqw.simulate(cfg).position_distribution(2)
        ref = dtqw.position_probabilities(cfg)
        _, fid = dtqw.hellinger(p, ref)
        assert abs(fid - 1.0) < 1e-12, scheme

    body = dtqw.build_walk(dtqw.WalkConfig(3, 4, localized_init=False))
    print("n=3 t=4 walk:", len(body), "gates, depth", body.depth())
    print("closed form:", dtqw.closed_form_metrics("present", 3, 4))

    sv = dtqw.simulate(dtqw.WalkConfig(2, 3))
    s_coin, s_pos, s_tot = sv.entropies(2)
    print(f"t=3 entropies: coin {s_coin:.4f} position {s_pos:.4f} total {s_tot:.4f}")
    assert s_coin > s_tot

    ideal = dtqw.position_probabilities(dtqw.WalkConfig(2, 10))
    counts = dtqw.run_noisy(dtqw.build_walk(dtqw.WalkConfig(2, 10)), 20000, 7, p2=0.01)
    pos = [counts[j] + counts[j + 4] for j in range(4)]
    total = sum(pos)
    _, fid = dtqw.hellinger([c / total for c in pos], ideal)
    print(f"noisy t=10 fidelity: {fid:.4f}")
    assert 0.5 < fid < 1.0

    est = dtqw.randomized_purities(dtqw.WalkConfig(2, 3), [[2]], 100, 2000, 3)[0]
    exact = sv.purities(2)[0]
    print(f"coin purity: exact {exact:.4f} randomized {est:.4f}")
    assert abs(est - exact) < 0.05

    print("smoke test ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
