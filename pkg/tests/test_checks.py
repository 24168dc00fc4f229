import pytest

from checks import run_all_checks, run_check
from tpds.config import RunConfig
from tpds.datagen import random_data, simulated_data


def test_stable_autonomous_data():
    data = simulated_data(2, 2, 3, 4, seed=6, radius=0.6)
    result = run_all_checks(data.x0, data.x1)
    verdicts = {item['test']: item['verdict'] for item in result['breakdown']}
    assert verdicts == {'sysid': True, 'stability': True, 'controllability': False, 'stabilizability': True}
    assert result['informative_count'] == 3
    assert not result['overall']
    assert result['summary'].startswith("⚠️ informative for")


def test_dense_config_reaches_same_verdicts():
    data = random_data(2, 2, 2, 4, seed=3, m=1)
    fourier = run_all_checks(data.x0, data.x1, data.u0, RunConfig(method='fourier'))
    dense = run_all_checks(data.x0, data.x1, data.u0, RunConfig(method='dense'))
    assert [i['verdict'] for i in fourier['breakdown']] == [i['verdict'] for i in dense['breakdown']]
    assert all(r.method == 'dense' for r in dense['reports'].values())


def test_single_check_requires_x1():
    data = random_data(2, 2, 2, 4, seed=3)
    assert run_check('sysid', data.x0).verdict
    with pytest.raises(ValueError):
        run_check('stability', data.x0)
    with pytest.raises(ValueError):
        run_check('observability', data.x0, data.x1)
