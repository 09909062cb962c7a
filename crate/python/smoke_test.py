"""Smoke test for the `arbiter` extension module."""
import math

import arbiter


def main():
    assert arbiter.semigroup_size() == 229

    a = math.log(2.0)
    d = arbiter.discrepancies([a, 0, 0, 0, 0, 0])
    assert all(abs(x - y) < 1e-15 for x, y in zip(d, [a, a, 0.0]))

    # [15, 21] from the first perturbed start lands on (1,0,0,-1,-1,0).
    traj = arbiter.run_lattice(1, [15, 21])
    assert traj[-1] == [1, 0, 0, -1, -1, 0], traj[-1]

    star = [15, 10, 3, 21, 12, 8, 23, 18, 6, 9, 16, 13, 11, 22, 2, 17, 24, 20, 5, 7, 4, 19, 1, 14]
    orbit = arbiter.run_lattice(1, star, periodic=True, steps=24)
    assert orbit[24] == orbit[0] and orbit[12] != orbit[0]

    balanced = [0.3, -0.2, 0.5, -0.5, 0.2, 0.7]
    states = arbiter.run_chain(balanced, list(range(1, 25)))
    assert all(s == balanced for s in states)

    res = arbiter.synthesize(1, -1, 2, start=2)
    end = arbiter.run_lattice(2, res["chain"])[-1]
    assert end[:3] == [1, -1, 2], end
    assert res["length"] == len(res["chain"])

    assert arbiter.commensurate_steps([595, 1683, 308]) == [17, 7, 11, 4, 3, 5]

    checks = arbiter.verify("core")
    assert not any(status == "fail" for _, status, _ in checks)
    assert any(name == "printed-activation-row-1" for name, _, _ in checks)

    try:
        arbiter.synthesize(0, 0, 0, start=7)
    except ValueError as e:
        assert "7" in str(e)
    else:
        raise AssertionError("start 7 accepted")

    print("smoke test ok")


if __name__ == "__main__":
    main()
