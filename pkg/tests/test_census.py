"""Canonical forms, the exhaustive census, and the barbell sweep."""

import random
from fractions import Fraction

import networkx as nx
import pytest

from nbkemeny import (
    BarbellParams,
    CensusError,
    barbell_kemeny,
    barbell_sweep,
    build_matrix,
    canonical_graph,
    canonical_graph6,
    canonical_labeling,
    census_csv,
    census_nb_vs_edge,
    census_summary,
    enumerate_graphs,
    from_edge_list,
    gen_complete,
    gen_complete_bipartite,
    gen_cycle,
    gen_cycle_barbell,
    gen_path,
    kemeny_mfpt,
    kemeny_spectrum,
    sweep_csv,
    sweep_skipped,
    to_graph6,
)

from conftest import PETERSEN_EDGES, random_connected


def relabel(g, perm):
    return from_edge_list(g.n, [(perm[u], perm[v]) for u, v in g.edges])


class TestCanonicalForm:
    def test_labeling_is_permutation(self, petersen):
        lab = canonical_labeling(petersen)
        assert sorted(lab) == list(range(10))

    def test_invariant_under_relabeling(self, petersen):
        rng = random.Random(7)
        want = canonical_graph6(petersen)
        for _ in range(20):
            perm = list(range(10))
            rng.shuffle(perm)
            assert canonical_graph6(relabel(petersen, perm)) == want

    def test_invariant_on_random_graphs(self):
        rng = random.Random(11)
        for _ in range(15):
            n = rng.randrange(4, 10)
            g = random_connected(n, rng, extra_edges=rng.randrange(0, n))
            want = canonical_graph6(g)
            perm = list(range(n))
            rng.shuffle(perm)
            assert canonical_graph6(relabel(g, perm)) == want

    def test_distinguishes_nonisomorphic(self):
        # same degree sequence, different graphs
        g1 = gen_cycle(6)
        g2 = from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        assert canonical_graph6(g1) != canonical_graph6(g2)

    def test_canonical_graph_is_isomorphic_copy(self, petersen):
        cg = canonical_graph(petersen)
        assert cg.n == 10 and cg.m == 15
        assert sorted(cg.degrees) == sorted(petersen.degrees)
        assert canonical_graph6(cg) == canonical_graph6(petersen)

    def test_complete_graph_fixed_point(self):
        g = gen_complete(6)
        assert canonical_graph(g).edges == g.edges


class TestEnumeration:
    # connected simple graphs on n vertices, a classical count
    CONNECTED = {4: 6, 5: 21, 6: 112, 7: 853}
    # after the min-degree >= 2 and no-cycle filters
    CORPUS = {4: 2, 5: 10, 6: 60, 7: 506}

    @pytest.mark.parametrize("n", [4, 5, 6])
    def test_connected_counts_match_atlas(self, n):
        atlas = nx.graph_atlas_g()
        want = sum(1 for h in atlas
                   if h.number_of_nodes() == n and nx.is_connected(h))
        got = len(list(enumerate_graphs(n, min_degree=0, exclude_cycles=False)))
        assert got == want == self.CONNECTED[n]

    @pytest.mark.parametrize("n", [4, 5, 6, 7])
    def test_corpus_counts(self, n):
        graphs = list(enumerate_graphs(n))
        assert len(graphs) == self.CORPUS[n]

    def test_yields_are_filtered_and_distinct(self):
        seen = set()
        for g in enumerate_graphs(5):
            assert g.is_connected()
            assert min(g.degrees) >= 2
            assert set(g.degrees) != {2}
            seen.add(canonical_graph6(g))
        assert len(seen) == self.CORPUS[5]

    def test_domain(self):
        for bad in (3, 9):
            with pytest.raises(CensusError):
                list(enumerate_graphs(bad))


class TestCensus:
    def test_builtin_counts(self):
        assert census_nb_vs_edge(4).count == 2
        assert census_nb_vs_edge(5).count == 10

    def test_equality_case_at_n6(self):
        result = census_nb_vs_edge(6)
        assert result.count == 18
        summary = census_summary(result)
        assert summary["n"] == 6
        assert summary["total"] == 60
        assert summary["count_nb_ge_e"] == 18
        assert summary["equal_list"] == [
            canonical_graph6(gen_complete_bipartite(3, 3))]

    def test_records_are_sorted_and_consistent(self):
        result = census_nb_vs_edge(5)
        keys = [(r.n, r.m, r.graph_id) for r in result.records]
        assert keys == sorted(keys)
        assert result.skipped == ()
        for r in result.records:
            assert r.diff_sign in ("nb_smaller", "equal", "nb_larger_or_equal")

    def test_spot_check_against_exact_route(self):
        from nbkemeny import parse_graph6
        result = census_nb_vs_edge(5)
        for r in result.records[:4]:
            g = parse_graph6(r.graph_id)
            ke = kemeny_mfpt(build_matrix(g, "edge", exact=True))[0]
            assert r.k_e == pytest.approx(float(ke), abs=1e-8)

    def test_stream_source(self):
        two_triangles = from_edge_list(
            6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
        stream = [
            to_graph6(gen_complete(4)),
            "!!not graph6!!",
            to_graph6(gen_path(4)),
            to_graph6(gen_cycle(5)),
            to_graph6(two_triangles),
            gen_complete_bipartite(2, 3),
        ]
        result = census_nb_vs_edge(stream)
        assert len(result.records) == 2
        assert len(result.skipped) == 4
        reasons = {reason for _, reason in result.skipped}
        assert "minimum degree below 2" in reasons
        assert "graph is a cycle" in reasons
        assert "not connected" in reasons

    def test_csv_shape(self):
        result = census_nb_vs_edge(4)
        text = census_csv(result.records)
        lines = text.strip().split("\n")
        assert lines[0] == "graph6,n,m,k_e,k_nb,diff_sign"
        assert len(lines) == 3


class TestSweep:
    def test_balanced_rows_only(self):
        rows = barbell_sweep(10)
        assert [r.k for r in rows] == [2, 4, 6]
        assert sweep_skipped(10) == [3, 5]
        for r in rows:
            assert r.a + r.b + r.k == 12
            assert r.a >= r.b >= 3

    def test_rows_match_closed_form(self):
        for r in barbell_sweep(12):
            _, ke, knb = barbell_kemeny(BarbellParams(r.k, r.a, r.b))
            assert r.k_e == ke and r.k_nb == knb
            assert isinstance(r.k_e, Fraction)

    def test_row_matches_engine(self):
        row = barbell_sweep(10)[0]
        g = gen_cycle_barbell(row.k, row.a, row.b)
        assert kemeny_spectrum(build_matrix(g, "edge")) == pytest.approx(
            float(row.k_e), abs=1e-8)

    def test_csv_fractions(self):
        text = sweep_csv(barbell_sweep(10))
        lines = text.strip().split("\n")
        assert lines[0] == "k,a,b,k_e,k_nb"
        assert all("/" in line.split(",")[3] for line in lines[1:])

    def test_domain(self):
        with pytest.raises(CensusError):
            barbell_sweep(5)
