import itertools

import pytest

from klhom.classifier import (CSV_HEADER, ClassifierConfig, VerdictKind, classify,
                              necessary_condition_fails, necessary_condition_fails_abstract,
                              sweep, verify_inhomogeneity_witness, working_generators)
from klhom.minors import GeneratorSet
from klhom.oracle import laplace_determinant
from klhom.paths import homogeneous_components, is_singular
from klhom.permutations import Permutation, all_permutations
from klhom.polynomials import Polynomial, mono_from_vars
P = Permutation.parse
NO_SHORTCUT = ClassifierConfig(pattern_shortcut=False)


def poly(*terms):
    return Polynomial.from_terms(
        (coeff, mono_from_vars(vars_)) for coeff, *vars_ in terms)


def brute_witness_exists(v, w):
    """Expansion-only re-derivation of the witness condition."""
    z, _, keep = working_generators(v, w)
    dets = [laplace_determinant(m, z) for m in keep]
    for i, det in enumerate(dets):
        if det.is_zero or det.is_homogeneous:
            continue
        others = [frozenset(var for var, _ in mono)
                  for j, d in enumerate(dets) if j != i for mono, _ in d.terms()]
        if all(any(not any(o <= frozenset(var for var, _ in mono) for o in others)
                   for mono, _ in comp.terms())
               for comp in homogeneous_components(det)):
            return True
    return False


class TestNecessaryCondition:
    def test_harness_example_has_no_witness(self):
        # f3's cubic component is divisible by f2, so the condition holds
        gens = [poly((1, "x1", "x2")), poly((1, "x2", "x3")),
                poly((1, "x1", "x3"), (1, "x2", "x3", "x4"))]
        assert necessary_condition_fails_abstract(gens) is None

    def test_lone_inhomogeneous_generator_witnesses(self):
        gens = [poly((1, "x1", "x3"), (1, "x2", "x3", "x4"))]
        hit = necessary_condition_fails_abstract(gens)
        assert hit is not None
        index, comps = hit
        assert index == 0 and [d for d, _ in comps] == [3, 2]

    def test_matches_expansion_scan_on_s4(self, s4_perms):
        for v in s4_perms:
            for w in s4_perms:
                if w == Permutation.longest(4):
                    continue
                z, _, keep = working_generators(v, w)
                if not keep or any(not is_singular(m, z) and
                                   laplace_determinant(m, z).is_unit_constant
                                   for m in keep):
                    continue
                gens = GeneratorSet(v, w, tuple(keep))
                fast = necessary_condition_fails(gens, z) is not None
                assert fast == brute_witness_exists(v, w), f"v={v} w={w}"


class TestClassify:
    def test_longest_w_is_empty_ideal(self):
        for v in ["1234", "2314", "4321"]:
            report = classify(P(v), P("4321"))
            assert report.verdict.kind is VerdictKind.EMPTY_IDEAL
            assert report.gens_before == 0

    def test_domination_failure_is_unit_ideal(self):
        report = classify(P("21"), P("12"))
        assert report.verdict.kind is VerdictKind.UNIT_IDEAL

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            classify(P("12"), P("123"))

    def test_pattern_shortcut_reports_reason(self):
        report = classify(P("1234"), P("2341"))
        assert report.verdict.kind is VerdictKind.KNOWN_HOMOGENEOUS
        assert report.verdict.reason == "v-avoids-321"

    def test_audited_shortcut_yields_to_verified_witness(self):
        # the protected pair whose ideal is provably inhomogeneous: the
        # checked witness outranks the quoted pattern claim
        report = classify(P("123"), P("312"))
        assert report.verdict.kind is VerdictKind.INHOMOGENEOUS
        assert "pattern-claim-contradicted" in report.verdict.reason
        unaudited = classify(P("123"), P("312"),
                             ClassifierConfig(audit_pattern=False))
        assert unaudited.verdict.kind is VerdictKind.KNOWN_HOMOGENEOUS

    def test_witnesses_reverify(self, s4_reports_no_shortcut):
        seen = 0
        for (v, w), report in s4_reports_no_shortcut.items():
            if report.verdict.kind is not VerdictKind.INHOMOGENEOUS:
                continue
            seen += 1
            z, _, keep = working_generators(v, w)
            gens = GeneratorSet(v, w, tuple(keep))
            assert verify_inhomogeneity_witness(report.verdict.witness, gens, z)
        assert seen > 0

    def test_witness_tampering_detected(self):
        report = classify(P("123"), P("312"), NO_SHORTCUT)
        witness = report.verdict.witness
        z, _, keep = working_generators(P("123"), P("312"))
        gens = GeneratorSet(P("123"), P("312"), tuple(keep))
        assert verify_inhomogeneity_witness(witness, gens, z)
        from klhom.classifier import InhomogeneityWitness
        from klhom.polynomials import Monomial
        from klhom.zmatrix import Cell
        forged = InhomogeneityWitness(
            witness.generator,
            ((1, Monomial(1, frozenset({Cell(2, 1)}))),) + witness.per_component[1:])
        assert not verify_inhomogeneity_witness(forged, gens, z)

    def test_s3_verdict_census(self, s3_reports_no_shortcut):
        # regression anchor; every constituent verdict is oracle-checked in
        # the acceptance suite
        counts = {}
        for report in s3_reports_no_shortcut.values():
            kind = report.verdict.kind.value
            counts[kind] = counts.get(kind, 0) + 1
        assert counts == {
            "empty_ideal": 6,
            "unit_ideal": 17,
            "known_homogeneous": 11,
            "mutation_certified_homogeneous": 1,
            "inhomogeneous": 1,
        }

    def test_translated_pattern_protection_never_witnessed(self, s4_reports_no_shortcut):
        # the value-complement protection that holds in this indexing
        for (v, w), report in s4_reports_no_shortcut.items():
            if report.verdict.kind is VerdictKind.INHOMOGENEOUS:
                assert not _avoids(v, (1, 2, 3)) and not _avoids(w, (3, 1, 2))

    def test_empty_ideal_iff_longest_w(self, s4_reports_no_shortcut):
        w0 = Permutation.longest(4)
        for (v, w), report in s4_reports_no_shortcut.items():
            assert (report.verdict.kind is VerdictKind.EMPTY_IDEAL) == (w == w0)

    def test_witnessed_pairs_resist_deep_mutation(self, s3_reports_no_shortcut):
        # a verified witness proves some component is not an ideal member, so
        # no depth of rewriting may certify every component
        from klhom.mutation import MutationConfig, run_mutation
        for (v, w), report in s3_reports_no_shortcut.items():
            if report.verdict.kind is not VerdictKind.INHOMOGENEOUS:
                continue
            z, _, keep = working_generators(v, w)
            gen_polys = [laplace_determinant(m, z) for m in keep]
            all_terminate = True
            for i, det in enumerate(gen_polys):
                if det.is_homogeneous:
                    continue
                for comp in homogeneous_components(det):
                    outcome = run_mutation(comp, gen_polys,
                                           MutationConfig(depth_limit=12, branch_budget=2048),
                                           target_gen_index=i)
                    all_terminate &= outcome.terminated
            assert not all_terminate


def _avoids(p, pattern):
    for tri in itertools.combinations(range(p.n), 3):
        vals = [p.word[i] for i in tri]
        order = sorted(vals)
        if tuple(order.index(x) + 1 for x in vals) == pattern:
            return False
    return True


class TestScale:
    def test_random_s5_pairs_self_consistent(self):
        import random
        rng = random.Random(53)
        perms = list(all_permutations(5))
        for _ in range(40):
            v, w = rng.choice(perms), rng.choice(perms)
            report = classify(v, w, NO_SHORTCUT)
            if report.verdict.kind is VerdictKind.INHOMOGENEOUS:
                z, _, keep = working_generators(v, w)
                gens = GeneratorSet(v, w, tuple(keep))
                assert verify_inhomogeneity_witness(report.verdict.witness, gens, z)
            elif report.verdict.kind is VerdictKind.KNOWN_HOMOGENEOUS:
                z, _, keep = working_generators(v, w)
                assert all(laplace_determinant(m, z).is_homogeneous for m in keep)


class TestSweep:
    def test_n2_has_four_rows(self, tmp_path):
        records = sweep(2, out=tmp_path / "r.csv")
        assert len(records) == 4
        lines = (tmp_path / "r.csv").read_text().splitlines()
        assert lines[0] == ",".join(CSV_HEADER)
        assert len(lines) == 5

    def test_deterministic_records(self):
        a = sweep(3, NO_SHORTCUT)
        b = sweep(3, NO_SHORTCUT)
        strip = lambda recs: [{k: v for k, v in r.items() if k != "wall_ms"}
                              for r in recs]
        # wall time is the only nondeterministic field, and digests pin the
        # witness/certificate payloads
        assert strip(a) == strip(b)

    def test_jsonl_roundtrip_and_resume(self, tmp_path):
        import json
        out = tmp_path / "r.jsonl"
        first = sweep(2, out=out, fmt="jsonl")
        # truncate to simulate an interrupted run, then resume
        lines = out.read_text().splitlines()
        out.write_text("\n".join(lines[:2]) + "\n")
        resumed = sweep(2, out=out, fmt="jsonl", resume=True)
        assert len(resumed) == 2
        final = [json.loads(line) for line in out.read_text().splitlines()]
        assert len(final) == 4
        assert {(r["v"], r["w"]) for r in final} == \
            {(str(v), str(w)) for v in all_permutations(2) for w in all_permutations(2)}

    def test_parallel_matches_serial(self):
        serial = sweep(2)
        parallel = sweep(2, workers=2)
        strip = lambda recs: [{k: v for k, v in r.items() if k != "wall_ms"}
                              for r in recs]
        assert strip(serial) == strip(parallel)

    def test_resource_limit(self):
        with pytest.raises(ResourceWarning):
            sweep(7)
