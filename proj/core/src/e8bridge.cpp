#include "eqlab/e8bridge.hpp"

#include "eqlab/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <bit>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_set>

namespace eqlab {

namespace {

constexpr int kPoints = 23;

std::uint32_t mask_of(const Block& b) {
    std::uint32_t m = 0;
    for (int p : b) m |= std::uint32_t{1} << p;
    return m;
}

Block block_of(std::uint32_t m) {
    Block b;
    for (int p = 0; p < 32; ++p)
        if (m >> p & 1u) b.push_back(p);
    return b;
}

std::uint32_t image_mask(std::uint32_t m, const std::vector<int>& perm) {
    std::uint32_t out = 0;
    for (int p = 0; p < kPoints; ++p)
        if (m >> p & 1u) out |= std::uint32_t{1} << perm[static_cast<std::size_t>(p)];
    return out;
}

QuadVector to_quad(const RationalVector& v) { return QuadVector(v.begin(), v.end()); }

ExactMatrix to_matrix(const std::vector<RationalVector>& rows) { return ExactMatrix::from_rows(rows); }

// G = (4/5)I + (1/5)J
Rational basis_inner(const RationalVector& u, const RationalVector& v) {
    Rational dot(0), su(0), sv(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (!u[i].is_zero() && !v[i].is_zero()) dot += u[i] * v[i];
        su += u[i];
        sv += v[i];
    }
    return Rational(4) / 5 * dot + Rational(1) / 5 * su * sv;
}

}  // namespace

BasisCoordSystem build_basis_coords() {
    BasisCoordSystem sys;
    sys.heptads = golay_heptads();
    sys.gram = ExactMatrix(kPoints, kPoints);
    for (int i = 0; i < kPoints; ++i)
        for (int j = 0; j < kPoints; ++j)
            sys.gram(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                i == j ? QuadScalar(1) : QuadScalar(Rational(1) / 5);
    for (int i = 0; i < kPoints; ++i) {
        RationalVector e(kPoints, Rational(0));
        e[static_cast<std::size_t>(i)] = 1;
        sys.lines.push_back(std::move(e));
    }
    const Rational in = Rational(1) / 3, out = Rational(-1) / 6;
    for (const auto& b : sys.heptads.blocks()) {
        RationalVector v(kPoints, out);
        for (int p : b) v[static_cast<std::size_t>(p)] = in;
        sys.lines.push_back(std::move(v));
    }
    return sys;
}

LineSystem certify_basis_coords(const BasisCoordSystem& sys) {
    std::vector<QuadVector> vs;
    vs.reserve(sys.lines.size());
    for (const auto& v : sys.lines) vs.push_back(to_quad(v));
    return LineSystem::certify(kPoints, std::move(vs), sys.gram);
}

std::vector<int> induced_line_perm(const BlockSet& bs, const std::vector<int>& perm) {
    std::vector<int> lp(static_cast<std::size_t>(kPoints) + bs.size());
    for (int i = 0; i < kPoints; ++i) lp[static_cast<std::size_t>(i)] = perm[static_cast<std::size_t>(i)];
    for (std::size_t b = 0; b < bs.size(); ++b) {
        Block img = block_of(image_mask(mask_of(bs[b]), perm));
        auto idx = bs.index_of(img);
        if (!idx) throw std::invalid_argument("permutation does not preserve the blocks");
        lp[kPoints + b] = kPoints + static_cast<int>(*idx);
    }
    return lp;
}

InvolutionAction find_involution(const BlockSet& bs, int which) {
    if (bs.point_count() != kPoints || bs.size() == 0) throw std::invalid_argument("expected the 23-point heptads");
    std::unordered_set<std::uint32_t> blocks;
    std::vector<std::vector<std::uint32_t>> through(kPoints);
    for (const auto& b : bs.blocks()) {
        const auto m = mask_of(b);
        blocks.insert(m);
        for (int p : b) through[static_cast<std::size_t>(p)].push_back(m);
    }
    const Block& fixed = bs[0];
    std::vector<int> perm(kPoints, -1);
    std::uint32_t assigned = 0;
    for (int p : fixed) {
        perm[static_cast<std::size_t>(p)] = p;
        assigned |= std::uint32_t{1} << p;
    }
    auto consistent = [&](int p) {
        for (auto m : through[static_cast<std::size_t>(p)])
            if ((m & assigned) == m && !blocks.count(image_mask(m, perm))) return false;
        return true;
    };
    int found = 0;
    std::function<bool()> dfs = [&]() -> bool {
        int p = 0;
        while (p < kPoints && (assigned >> p & 1u)) ++p;
        if (p == kPoints) return found++ == which;
        for (int q = p + 1; q < kPoints; ++q) {
            if (assigned >> q & 1u) continue;
            perm[static_cast<std::size_t>(p)] = q;
            perm[static_cast<std::size_t>(q)] = p;
            assigned |= (std::uint32_t{1} << p) | (std::uint32_t{1} << q);
            if (consistent(p) && consistent(q) && dfs()) return true;
            assigned &= ~((std::uint32_t{1} << p) | (std::uint32_t{1} << q));
            perm[static_cast<std::size_t>(p)] = perm[static_cast<std::size_t>(q)] = -1;
        }
        return false;
    };
    if (!dfs()) throw SearchExhausted("fewer than " + std::to_string(which + 1) + " involutions fix the first heptad");
    InvolutionAction x;
    x.perm = perm;
    x.fixed_heptad = fixed;
    for (int p = 0; p < kPoints; ++p)
        if (perm[static_cast<std::size_t>(p)] > p) x.transpositions.emplace_back(p, perm[static_cast<std::size_t>(p)]);
    x.line_perm = induced_line_perm(bs, perm);
    return x;
}

HeptadCensus heptad_census(const BlockSet& bs, const InvolutionAction& x) {
    HeptadCensus c;
    std::uint32_t supp = 0;
    for (int p = 0; p < kPoints; ++p)
        if (x.perm[static_cast<std::size_t>(p)] != p) supp |= std::uint32_t{1} << p;
    const std::uint32_t fix = ~supp & ((std::uint32_t{1} << kPoints) - 1);
    for (const auto& b : bs.blocks()) {
        const auto m = mask_of(b);
        const auto img = image_mask(m, x.perm);
        const int in_supp = std::popcount(m & supp);
        int type = -1;
        if (m == fix) type = 0;
        else if (in_supp == 4) type = img == m ? 1 : 2;
        else if (in_supp == 6) type = 3;
        if (type < 0) {
            ++c.other;
            continue;
        }
        ++c.types[static_cast<std::size_t>(type)];
        if (type >= 2 && std::popcount(m & img) != 3) c.moved_meet_in_three = false;
    }
    return c;
}

EigenSplit eigenspace_split(const BasisCoordSystem& sys, const InvolutionAction& x) {
    EigenSplit s;
    for (std::size_t l = 0; l < sys.lines.size(); ++l)
        (x.line_perm[l] == static_cast<int>(l) ? s.fixed : s.moved).push_back(static_cast<int>(l));
    std::vector<QuadVector> vs;
    for (int l : s.fixed) vs.push_back(to_quad(sys.lines[static_cast<std::size_t>(l)]));
    const LineSystem fixed_lines = LineSystem::certify(kPoints, std::move(vs), sys.gram);
    s.fixed_rank = fixed_lines.span_dim();
    const auto reg = regularity(from_lines(fixed_lines));
    if (const auto* p = regular_params(reg)) s.fixed_regular = *p;
    s.relative_saturated = bounds_report(fixed_lines).relative_saturated;
    return s;
}

RationalVector project_to_w(const BasisCoordSystem& sys, const InvolutionAction& x, int line) {
    const auto l = static_cast<std::size_t>(line);
    if (l >= sys.lines.size()) throw std::out_of_range("line index out of range");
    const auto img = static_cast<std::size_t>(x.line_perm[l]);
    if (img == l) throw NotMoved("line " + std::to_string(line) + " is fixed by the involution");
    RationalVector out(sys.lines[l].size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (sys.lines[l][i] - sys.lines[img][i]) / 2;
    return out;
}

RationalVector w_coordinates(const InvolutionAction& x, const RationalVector& v) {
    RationalVector out;
    std::vector<char> seen(v.size(), 0);
    for (const auto& [p, q] : x.transpositions) {
        const auto up = static_cast<std::size_t>(p), uq = static_cast<std::size_t>(q);
        if (!(v[uq] == -v[up])) throw std::invalid_argument("vector is not in the (-1)-eigenspace");
        out.push_back(v[up]);
        seen[up] = seen[uq] = 1;
    }
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!seen[i] && !v[i].is_zero()) throw std::invalid_argument("vector is not in the (-1)-eigenspace");
    return out;
}

ExactMatrix w_form(const BasisCoordSystem& sys, const InvolutionAction& x) {
    const std::size_t n = x.transpositions.size();
    ExactMatrix f(n, n);
    auto g = [&](int a, int b) { return sys.gram(static_cast<std::size_t>(a), static_cast<std::size_t>(b)); };
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            const auto [p, q] = x.transpositions[j];
            const auto [r, s] = x.transpositions[k];
            f(j, k) = g(p, r) - g(p, s) - g(q, r) + g(q, s);
        }
    return f;
}

Rational form_inner(const ExactMatrix& form, const RationalVector& u, const RationalVector& v) {
    Rational s(0);
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i].is_zero()) continue;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j].is_zero()) continue;
            const QuadScalar& g = form(i, j);
            if (!g.is_zero()) s += u[i] * g.rat() * v[j];
        }
    }
    return s;
}

E8Certificate certify_e8(const std::vector<RationalVector>& roots, const ExactMatrix& form) {
    E8Certificate cert;
    const std::size_t n = roots.size();
    cert.roots = n;
    if (n == 0) throw CensusMismatch("no roots");
    if (!form.is_rational()) throw std::invalid_argument("form must be rational");
    const std::set<RationalVector> members(roots.begin(), roots.end());
    if (members.size() != n) throw CensusMismatch("roots are not distinct");

    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) g[i][j] = form_inner(form, roots[i], roots[j]);
    });
    cert.norm = g[0][0];
    for (std::size_t i = 0; i < n; ++i)
        if (!(g[i][i] == cert.norm)) throw CensusMismatch("roots have different norms");

    cert.rank = to_matrix(roots).rank();
    if (cert.rank != 8) throw RankMismatch("root span has rank " + std::to_string(cert.rank));

    const std::map<Rational, std::size_t> want = {{Rational(-1), 1},
                                                  {Rational(-1) / 2, 56},
                                                  {Rational(0), 126},
                                                  {Rational(1) / 2, 56},
                                                  {Rational(1), 1}};
    for (std::size_t i = 0; i < n; ++i) {
        std::map<Rational, std::size_t> c;
        for (std::size_t j = 0; j < n; ++j) ++c[g[i][j] / cert.norm];
        if (c != want) throw CensusMismatch("cosine census differs at root " + std::to_string(i));
        if (i == 0) cert.census = c;
    }

    std::vector<char> bad(n, 0);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n && !bad[i]; ++j) {
            const Rational c = Rational(2) * g[i][j] / cert.norm;
            RationalVector r(roots[j]);
            if (!c.is_zero())
                for (std::size_t k = 0; k < r.size(); ++k) r[k] -= c * roots[i][k];
            if (!members.count(r)) bad[i] = 1;
        }
    });
    for (std::size_t i = 0; i < n; ++i)
        if (bad[i]) throw NotReflectionClosed("reflection in root " + std::to_string(i) + " leaves the set");
    cert.reflection_closed = true;
    return cert;
}

LineSystem descend_28(const std::vector<RationalVector>& roots, const ExactMatrix& form, int alpha) {
    const auto& a = roots.at(static_cast<std::size_t>(alpha));
    const Rational aa = form_inner(form, a, a);
    std::set<RationalVector> reps;
    for (const auto& b : roots) {
        const Rational c = form_inner(form, b, a) / aa;
        if (!(c == Rational(1) / 2) && !(c == Rational(-1) / 2)) continue;
        RationalVector w(b);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] -= c * a[k];
        auto nz = std::find_if(w.begin(), w.end(), [](const Rational& x) { return !x.is_zero(); });
        if (nz != w.end() && nz->sign() < 0)
            for (auto& x : w) x = -x;
        reps.insert(std::move(w));
    }
    std::vector<QuadVector> vs;
    for (const auto& w : reps) vs.push_back(to_quad(w));
    return LineSystem::certify(static_cast<int>(a.size()), std::move(vs), form);
}

namespace {

DescentStage make_stage(const std::string& name, const LineSystem& start, std::vector<int> indices) {
    std::sort(indices.begin(), indices.end());
    DescentStage st{name, indices, start.subsystem(indices), 0, std::nullopt, {}, std::nullopt};
    st.rank = st.lines.span_dim();
    const TwoGraph t = from_lines(st.lines);
    const auto search = find_max_incoherent(t, st.rank);
    if (search.complete) st.inc = search.best.size();
    if (st.inc) {
        if (auto lex = lex_least_incoherent(t, *st.inc)) st.incoherent = *lex;
    }
    const auto reg = regularity(t);
    if (const auto* p = regular_params(reg)) st.regular = *p;
    return st;
}

}  // namespace

std::vector<DescentStage> descend_chain(const LineSystem& start, const std::vector<int>& witness) {
    std::vector<int> gamma = witness;
    std::sort(gamma.begin(), gamma.end());
    if (gamma.size() != 7) throw NoIncoherentWitness("need an incoherent set of 7 lines");
    try {
        certify_incoherent(start, gamma);
    } catch (const NoWitness& e) {
        throw NoIncoherentWitness(e.what());
    }
    const TwoGraph t = from_lines(start);
    const int i = gamma[0], j = gamma[1];
    const std::vector<int> ij{i, j};

    std::vector<int> omega6, gamma6;
    for (int g : gamma)
        if (g != i && g != j) {
            omega6.push_back(g);
            gamma6.push_back(g);
        }
    int gamma_ij = -1;
    for (int x = 0; x < static_cast<int>(start.size()); ++x) {
        if (std::binary_search(gamma.begin(), gamma.end(), x)) continue;
        GammaPartition p;
        try {
            p = gamma_partition(t, gamma, x);
        } catch (const NotMaximal& e) {
            throw NoIncoherentWitness(e.what());
        }
        const bool misses = std::none_of(p.part1.begin(), p.part1.end(), [&](int y) { return y == i || y == j; });
        if (p.part1 == ij) {
            if (gamma_ij >= 0) throw NoIncoherentWitness("two external lines split off the same pair");
            gamma_ij = x;
            omega6.push_back(x);
        } else if (misses) {
            omega6.push_back(x);
        }
    }
    if (gamma_ij < 0) throw NoIncoherentWitness("no external line splits off the first pair");
    gamma6.push_back(gamma_ij);
    std::sort(gamma6.begin(), gamma6.end());

    std::vector<DescentStage> chain;
    DescentStage s28{"28", {}, start, start.span_dim(), gamma.size(), gamma, std::nullopt};
    s28.indices.resize(start.size());
    std::iota(s28.indices.begin(), s28.indices.end(), 0);
    const auto reg28 = regularity(t);
    if (const auto* p = regular_params(reg28)) s28.regular = *p;
    chain.push_back(std::move(s28));

    DescentStage s16 = make_stage("16", start, omega6);
    // the known incoherent set for this stage, located in stage coordinates
    s16.incoherent.clear();
    for (int g : gamma6)
        s16.incoherent.push_back(static_cast<int>(
            std::lower_bound(s16.indices.begin(), s16.indices.end(), g) - s16.indices.begin()));
    if (!is_incoherent(from_lines(s16.lines), s16.incoherent))
        throw NoIncoherentWitness("the six-line set is not incoherent");
    chain.push_back(s16);

    std::vector<int> omega5;
    for (int x : omega6)
        if (!std::binary_search(gamma6.begin(), gamma6.end(), x)) omega5.push_back(x);
    DescentStage s10 = make_stage("10", start, omega5);
    if (s10.incoherent.empty()) throw NoIncoherentWitness("no incoherent set found in the ten-line stage");
    chain.push_back(s10);

    std::vector<int> omega4;
    for (std::size_t p = 0; p < s10.indices.size(); ++p)
        if (std::find(s10.incoherent.begin(), s10.incoherent.end(), static_cast<int>(p)) == s10.incoherent.end())
            omega4.push_back(s10.indices[p]);
    chain.push_back(make_stage("6", start, omega4));
    return chain;
}

E8Report run_e8_pipeline(int which_involution) {
    E8Report rep;
    std::string stage = "basis";
    try {
        const BasisCoordSystem sys = build_basis_coords();
        const LineSystem all = certify_basis_coords(sys);
        if (all.size() != 276 || !(all.rho_sq() == Rational(25)))
            throw std::runtime_error("basis coordinates do not give 276 lines at angle 1/5");

        stage = "involution";
        rep.involution = find_involution(sys.heptads, which_involution);
        const auto& x = rep.involution;

        stage = "census";
        rep.census = heptad_census(sys.heptads, x);
        if (rep.census.types != std::array<int, 4>{1, 28, 112, 112} || rep.census.other != 0)
            throw std::runtime_error("heptad census differs from (1,28,112,112)");

        stage = "eigenspace";
        rep.split = eigenspace_split(sys, x);
        if (rep.split.fixed.size() != 36 || rep.split.fixed_rank != 15 || !rep.split.fixed_regular)
            throw std::runtime_error("fixed lines: " + std::to_string(rep.split.fixed.size()) + " of rank " +
                                     std::to_string(rep.split.fixed_rank));

        stage = "projection";
        std::vector<RationalVector> proj, wc;
        for (int l : rep.split.moved) proj.push_back(project_to_w(sys, x, l));
        rep.projections = proj.size();
        const Rational two_fifths = Rational(2) / 5, fifth = Rational(1) / 5;
        rep.norms_ok = std::all_of(proj.begin(), proj.end(), [&](const RationalVector& v) {
            return basis_inner(v, v) == two_fifths;
        });
        for (const auto& v : proj) wc.push_back(w_coordinates(x, v));
        const ExactMatrix wf = w_form(sys, x);
        std::vector<char> vals_ok(proj.size(), 1), match_ok(proj.size(), 1);
        parallel_for(proj.size(), [&](std::size_t a) {
            for (std::size_t b = 0; b < proj.size(); ++b) {
                const Rational g = basis_inner(proj[a], proj[b]);
                // delta^x projects to -delta_W; every other pair meets at 0 or +-1/5
                const bool partner = x.line_perm[static_cast<std::size_t>(rep.split.moved[a])] == rep.split.moved[b];
                if (a != b && !(partner ? g == -two_fifths : (g.is_zero() || g == fifth || g == -fifth)))
                    vals_ok[a] = 0;
                if (!(form_inner(wf, wc[a], wc[b]) == g)) match_ok[a] = 0;
            }
        });
        rep.inner_values_ok = std::all_of(vals_ok.begin(), vals_ok.end(), [](char c) { return c != 0; });
        rep.coords_match = std::all_of(match_ok.begin(), match_ok.end(), [](char c) { return c != 0; });
        if (!rep.norms_ok || !rep.inner_values_ok || !rep.coords_match)
            throw std::runtime_error(std::string("projections fail the ") +
                                     (!rep.norms_ok ? "norm" : !rep.inner_values_ok ? "inner product" : "coordinate") +
                                     " check");

        stage = "e8";
        rep.e8 = certify_e8(wc, wf);

        stage = "descend28";
        rep.lines28 = descend_28(wc, wf, 0);
        const auto search = find_max_incoherent(rep.lines28, 7);
        if (search.best.size() != 7) throw NoIncoherentWitness("no incoherent set of 7 among the 28 lines");
        rep.witness28 = search.best;

        stage = "chain";
        rep.chain = descend_chain(rep.lines28, rep.witness28);
    } catch (const E8StageError&) {
        throw;
    } catch (const std::exception& e) {
        throw E8StageError(stage, e.what());
    }
    return rep;
}

}  // namespace eqlab
