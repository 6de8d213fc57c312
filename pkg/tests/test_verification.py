from gmodule_mpc.algebra import SignModule, UnitsModule
from gmodule_mpc.sharing import GmCorrelation
from gmodule_mpc.transport import P0, P1, Recv, Send
from gmodule_mpc.verification import (
    _all_equal,
    _views,
    gm_records,
    privacy_gm,
    privacy_gmr,
    privacy_mot,
    run_suite,
    verify_properties,
    verify_sc,
)


def test_privacy_suites_pass():
    for res in (privacy_gm(SignModule(5)), privacy_gm(UnitsModule(5)), privacy_gmr(SignModule(5)),
                privacy_gmr(UnitsModule(5)), privacy_mot(3)):
        assert res.ok, res.failures


def test_privacy_check_catches_a_leak():
    # P1 sends its input in the clear: P0's view then depends on a
    action = SignModule(5)
    A = action.module

    def leaky(ctx, value):
        spec = GmCorrelation(action)
        if ctx.party is P0:
            ctx.correlation(spec, ("gm",))
            c = yield Recv(P1, ("gm",), "c")
            return c
        ctx.correlation(spec, ("gm",))
        yield Send(P0, ("gm",), "c", value, A)
        return 0

    records = list(gm_records(action))
    views = [_views(leaky, ("gm",), records, 1, a)[0] for a in A.elements()]
    assert not _all_equal(views)


def test_property_suites_pass():
    assert all(s.ok for s in verify_properties())


def test_sc_suite_counts_pairs():
    res = verify_sc(3, seeds=(0, 1))
    assert res.ok and res.total == 64 and res.summary() == "PASS sc n=3 p=7: 64/64 match"


def test_run_suite_all_small():
    suites = run_suite("all", trials=50)
    assert all(s.ok for s in suites), [s.summary() for s in suites if not s.ok]
    assert sum(s.p2_online for s in suites) == 0
