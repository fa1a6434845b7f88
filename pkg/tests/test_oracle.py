import pytest

from barrierbot.core import Trajectory, validate_instance
from barrierbot.offline import solve_offline
from barrierbot.oracle import TooLarge, brute_force_optimal
from barrierbot.sim import execute_trajectory, verify_shape


@pytest.mark.parametrize("name, length", [("tiny", 3.5), ("tri", 4.1), ("fig1", 11.1)])
def test_oracle_examples(request, name, length):
    inst = request.getfixturevalue(name)
    t, got = brute_force_optimal(inst)
    assert got == pytest.approx(length, abs=1e-9)
    assert t == solve_offline(inst)
    assert execute_trajectory(inst, t).covered and verify_shape(t)


def test_oracle_covered_barrier(unit):
    assert brute_force_optimal(unit) == (Trajectory(), 0.0)


def test_oracle_refuses_large_instances():
    inst = validate_instance(26, 1, [float(x) for x in range(13)])
    with pytest.raises(TooLarge):
        brute_force_optimal(inst)
    with pytest.raises(TooLarge):
        brute_force_optimal(validate_instance(8, 0.5, [0.3] * 8), max_n=4)
