#include "properties.hpp"

#include "oracle.hpp"

#include "eqlab/designkit.hpp"
#include "eqlab/twograph.hpp"

#include <random>
#include <sstream>

namespace props {

using namespace eqlab;

namespace {

Augmented augmented(const BlockSet& bs) {
    auto a = construct_augmented(bs);
    return {std::move(a.lines), std::move(a.witness)};
}

Result pass(std::string name, std::string detail) { return {std::move(name), true, std::move(detail)}; }
Result fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail)}; }

bool odd_edges(const SimpleGraph& g, int i, int j, int k) {
    return (g.has_edge(i, j) + g.has_edge(j, k) + g.has_edge(i, k)) % 2 == 1;
}

LineSystem negate_some(const LineSystem& L, std::mt19937_64& rng) {
    std::vector<QuadVector> vs = L.vectors();
    std::bernoulli_distribution flip(0.5);
    for (auto& v : vs)
        if (flip(rng))
            for (auto& x : v) x = -x;
    return LineSystem::certify(L.dim(), std::move(vs), L.form());
}

// Gram of b equals c * D * Gram(a) * D for a diagonal sign matrix D and c > 0.
bool gram_switching_equivalent(const LineSystem& a, const LineSystem& b) {
    if (a.size() != b.size()) return false;
    const auto& ga = a.gram();
    const auto& gb = b.gram();
    const std::size_t n = a.size();
    const QuadScalar c = gb(0, 0) / ga(0, 0);
    if (c.sign() <= 0) return false;
    std::vector<int> sigma(n, 1);
    for (std::size_t i = 1; i < n; ++i) sigma[i] = gb(0, i).sign() * ga(0, i).sign();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const QuadScalar want = c * ga(i, j) * QuadScalar(sigma[i] * sigma[j]);
            if (!(gb(i, j) == want)) return false;
        }
    return true;
}

}  // namespace

const Augmented& lines23() {
    static const Augmented s = augmented(golay_heptads());
    return s;
}
const Augmented& lines7() {
    static const Augmented s = augmented(pair_blockset(7));
    return s;
}
const Augmented& lines6() {
    static const Augmented s = augmented(qs_design_6_3_2());
    return s;
}

Result axiom_fuzz(std::size_t samples, int n_max, std::uint64_t seed) {
    const std::string name = "two-graph axiom fuzz";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(4, n_max);
    std::uniform_real_distribution<double> density(0.05, 0.95);
    std::size_t violations = 0, quads = 0;
    for (std::size_t s = 0; s < samples; ++s) {
        const int n = size(rng);
        SimpleGraph g(n);
        std::bernoulli_distribution edge(density(rng));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (edge(rng)) g.add_edge(i, j);
        const TwoGraph t = TwoGraph::from_graph(g);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k)
                    if (t.coherent(i, j, k) != odd_edges(g, i, j, k)) {
                        std::ostringstream o;
                        o << "sample " << s << ": triple {" << i << "," << j << "," << k << "} misclassified";
                        return fail(name, o.str());
                    }
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                for (int k = j + 1; k < n; ++k) {
                    const int cijk = t.coherent(i, j, k);
                    for (int l = k + 1; l < n; ++l) {
                        ++quads;
                        if ((cijk + t.coherent(i, j, l) + t.coherent(i, k, l) + t.coherent(j, k, l)) % 2) ++violations;
                    }
                }
        if (t.axiom_violation_exhaustive()) ++violations;
    }
    std::ostringstream o;
    o << samples << " graphs, " << quads << " 4-sets, " << violations << " violations";
    return violations == 0 ? pass(name, o.str()) : fail(name, o.str());
}

Result graph_switching(std::size_t samples, std::uint64_t seed) {
    const std::string name = "switching invariance of graphs";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size(1, 30);
    std::bernoulli_distribution coin(0.5);
    for (std::size_t s = 0; s < samples; ++s) {
        const int n = size(rng);
        SimpleGraph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (coin(rng)) g.add_edge(i, j);
        std::vector<int> x;
        for (int i = 0; i < n; ++i)
            if (coin(rng)) x.push_back(i);
        const SimpleGraph h = switch_graph(g, x);
        if (!(TwoGraph::from_graph(h) == TwoGraph::from_graph(g)))
            return fail(name, "sample " + std::to_string(s) + " changed its two-graph");
        if (!(switch_graph(h, x) == g)) return fail(name, "switching twice is not the identity");
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                const bool cross = oracle::contains(x, i) != oracle::contains(x, j);
                if (h.has_edge(i, j) != (cross != g.has_edge(i, j)))
                    return fail(name, "switch touched the wrong edges");
            }
    }
    return pass(name, std::to_string(samples) + " graphs");
}

Result line_switching(std::uint64_t seed) {
    const std::string name = "switching invariance of from_lines";
    std::mt19937_64 rng(seed);
    const std::vector<std::pair<const LineSystem*, int>> cases = {
        {&lines6().lines, 8}, {&lines7().lines, 8}, {&lines23().lines, 2}};
    int runs = 0;
    for (const auto& [L, reps] : cases) {
        const TwoGraph t = from_lines(*L);
        for (int r = 0; r < reps; ++r, ++runs)
            if (!(from_lines(negate_some(*L, rng)) == t))
                return fail(name, std::to_string(L->size()) + "-line system changed under re-signing");
    }
    const LineSystem sts = sts15_plus_one();
    const TwoGraph t = from_lines(sts);
    for (int r = 0; r < 4; ++r, ++runs)
        if (!(from_lines(negate_some(sts, rng)) == t)) return fail(name, "36-line system changed under re-signing");
    return pass(name, std::to_string(runs) + " re-signings");
}

Result setsum_identities() {
    const std::string name = "set-sum identities";
    std::ostringstream o;
    for (const Augmented* s : {&lines6(), &lines7(), &lines23()}) {
        const auto signs = oracle::sign_matrix(s->lines);
        const auto a = oracle::constant_a(signs);
        if (!a) return fail(name, std::to_string(s->lines.size()) + "-line two-graph is not regular");
        if (auto m = oracle::setsum_identities(signs, s->witness, *a))
            return fail(name, "d=" + std::to_string(s->witness.size()) + " " + m->what + ": got " + m->got.str() +
                                  ", expected " + m->want.str());
        for (const auto& c : setsum_checks(from_lines(s->lines), s->witness))
            if (!c.ok) return fail(name, "library check " + c.name + " disagrees: " + c.detail);
        o << "d=" << s->witness.size() << " ok; ";
    }
    return pass(name, o.str());
}

Result foursum_identities() {
    const std::string name = "four-set sums";
    std::ostringstream o;
    for (const Augmented* s : {&lines6(), &lines7(), &lines23()}) {
        const auto signs = oracle::sign_matrix(s->lines);
        const auto a = oracle::constant_a(signs);
        if (!a) return fail(name, "not regular");
        const auto splits = oracle::taylor_splits(signs, s->witness);
        const long k = static_cast<long>(std::min(splits.front().plus.size(), splits.front().minus.size()));
        const auto fs = oracle::four_sums(signs, s->witness, *a, k);
        const auto lib = foursum_check(from_lines(s->lines), s->witness);
        const long d = static_cast<long>(s->witness.size());
        if (!fs.sums_ok) return fail(name, "d=" + std::to_string(d) + " sums differ from a(d-k-1)(k-1)");
        if (!lib.sums_ok || lib.expected_sum != fs.expected)
            return fail(name, "library four-sum disagrees at d=" + std::to_string(d));
        const bool constant = fs.values.size() == 1;
        if (lib.constant != constant) return fail(name, "constancy flag disagrees at d=" + std::to_string(d));
        if (constant && Rational(*fs.values.begin()) != Rational(2 * fs.expected, (d - 2) * (d - 3)))
            return fail(name, "constant value disagrees with 2a(d-k-1)(k-1)/((d-2)(d-3))");
        o << "d=" << d << " sum=" << fs.expected << (constant ? " constant=" + std::to_string(*fs.values.begin()) : "")
          << "; ";
    }
    return pass(name, o.str());
}

Result relative_bound_iff_regular() {
    const std::string name = "relative bound saturated iff regular";
    struct Case {
        std::string label;
        LineSystem lines;
        int expect;  // 1 positive control, 0 negative control, -1 either
    };
    const BlockSet golay = golay_heptads();
    std::vector<Case> cases;
    cases.push_back({"276", lines23().lines, 1});
    cases.push_back({"28 augmented", lines7().lines, 1});
    cases.push_back({"16 augmented", lines6().lines, 1});
    cases.push_back({"28 pairs", construct_omega(pair_blockset(8)), 1});
    cases.push_back({"16 pairs", augment_all_ones(construct_omega(pair_blockset(6))), 1});
    cases.push_back({"36", sts15_plus_one(), 1});
    cases.push_back({"176 residual", construct_omega(residual_design(golay, 0)), 1});
    cases.push_back({"hexagon", hexagon_lines(), 1});
    cases.push_back({"icosahedron", icosahedron_lines(), 1});
    cases.push_back({"253 heptads", construct_omega(golay), 0});
    cases.push_back({"35 triples", construct_omega(pg32_sts15()), -1});
    cases.push_back({"21 pairs", construct_omega(pair_blockset(7)), -1});
    std::ostringstream o;
    for (const auto& c : cases) {
        const auto signs = oracle::sign_matrix(c.lines);
        const bool regular = oracle::constant_a(signs).has_value();
        const auto rel = oracle::relative_bound(static_cast<long>(c.lines.span_dim()), oracle::rho_squared(c.lines));
        const bool saturated = rel && *rel == Rational(static_cast<long>(c.lines.size()));
        if (regular != saturated)
            return fail(name, c.label + ": regular=" + std::to_string(regular) + " saturated=" +
                                  std::to_string(saturated));
        if (c.expect >= 0 && saturated != (c.expect == 1))
            return fail(name, c.label + " control came out the wrong way");
        const bool lib_regular = regular_params(regularity(from_lines(c.lines))) != nullptr;
        if (lib_regular != regular || bounds_report(c.lines).relative_saturated != saturated)
            return fail(name, c.label + ": library verdict differs from the oracle");
        o << c.label << (saturated ? "+ " : "- ");
    }
    return pass(name, o.str());
}

static Block comp_block(const BlockSet& bs, std::size_t i) {
    Block c;
    for (int p = 0; p < bs.point_count(); ++p)
        if (!std::binary_search(bs[i].begin(), bs[i].end(), p)) c.push_back(p);
    return c;
}

Result complement_construction() {
    const std::string name = "complement construction gives the same two-graph";
    const BlockSet golay = golay_heptads();
    const std::vector<std::pair<std::string, BlockSet>> sets = {
        {"heptads", golay},
        {"heptads residual", residual_design(golay, 0)},
        {"heptads derived", derived_design(golay, 0)},
        {"pairs-6", pair_blockset(6)},
        {"pairs-7", pair_blockset(7)},
        {"pairs-8", pair_blockset(8)},
        {"triples of PG(3,2)", pg32_sts15()},
        {"2-(6,3,2)", qs_design_6_3_2()},
    };
    std::ostringstream o;
    for (const auto& [label, bs] : sets) {
        const LineSystem a = construct_omega(bs);
        // complement() re-sorts its blocks; line i of b must come from the complement of bs[i]
        const BlockSet comp = bs.complement();
        const LineSystem raw = construct_omega(comp);
        std::vector<QuadVector> vs;
        for (std::size_t i = 0; i < bs.size(); ++i) vs.push_back(raw.vector(*comp.index_of(comp_block(bs, i))));
        const LineSystem b = LineSystem::certify(raw.dim(), std::move(vs));
        const auto sa = oracle::sign_matrix(a), sb = oracle::sign_matrix(b);
        for (int i = 0; i < sa.n; ++i)
            for (int j = i + 1; j < sa.n; ++j)
                for (int k = j + 1; k < sa.n; ++k)
                    if (oracle::coherent(sa, i, j, k) != oracle::coherent(sb, i, j, k))
                        return fail(name, label + ": coherent triples differ");
        if (!gram_switching_equivalent(a, b)) return fail(name, label + ": Gram matrices not switching equivalent");
        if (!(from_lines(a) == from_lines(b))) return fail(name, label + ": library two-graphs differ");
        o << label << "; ";
    }
    return pass(name, o.str());
}

Result fuse_identity(std::size_t samples, std::uint64_t seed) {
    const std::string name = "calderbank identity at s1 = k-(rho-1)^2/4, s2 = k-(rho^2-1)/4";
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> rho_dist(2, 200), k_dist(1, 5000);
    std::size_t tried = 0;
    while (tried < samples) {
        const Rational rho(rho_dist(rng)), k(k_dist(rng));
        const Rational x = (rho - 1) * (rho - 1) / 4, y = (rho * rho - 1) / 4;
        if (k == x) continue;
        // k(d-k) = (rho-1)^2 (d+rho)/4 solved for d
        const Rational d = (k * k + rho * x) / (k - x);
        const Rational want = (rho * rho - 1) * (rho * rho - 1) * (rho * rho - d - 2) / 16;
        const Rational kk = k * (d - k);
        const Rational test_side = (d - 1) * (d - 2) * x * y - kk * (d - 2) * (x + y) + kk * (kk - 1);
        if (test_side != want) return fail(name, "test-side polynomial disagrees at rho=" + rho.str());
        if (calderbank_f(d, k, x, y) != want)
            return fail(name, "calderbank_f disagrees at rho=" + rho.str() + " k=" + k.str());
        ++tried;
    }
    return pass(name, std::to_string(samples) + " random (d, rho)");
}

std::vector<Result> run_all() {
    return {axiom_fuzz(1000, 40, 20240611), graph_switching(300, 7), line_switching(11), setsum_identities(),
            foursum_identities(), relative_bound_iff_regular(), complement_construction(), fuse_identity(2000, 5)};
}

}  // namespace props
