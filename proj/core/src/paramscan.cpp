#include "eqlab/paramscan.hpp"

#include "eqlab/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eqlab {

namespace {

struct TableRow {
    long d, k, lambda, s1, s2;
    const char* existence;
};

// Existence columns as published; rows from both parameter tables, deduplicated.
const TableRow kTabulated[] = {
    {6, 3, 2, 2, 1, "Yes"},
    {7, 2, 1, 1, 0, "Yes"},
    {20, 10, 18, 6, 4, "No"},
    {21, 8, 14, 4, 2, "No"},
    {23, 7, 21, 3, 1, "Yes"},
    {42, 21, 60, 12, 9, "?"},
    {43, 18, 51, 9, 6, "No"},
    {72, 36, 140, 20, 16, "?"},
    {73, 32, 124, 16, 12, "?"},
    {110, 55, 270, 30, 25, "?"},
    {111, 50, 245, 25, 20, "?"},
    {115, 45, 330, 20, 15, "?"},
    {118, 43, 602, 18, 13, "?"},
    {156, 78, 462, 42, 36, "No"},
    {157, 72, 426, 36, 30, "No"},
    {163, 64, 672, 28, 22, "No"},
    {210, 105, 728, 56, 49, "?"},
    {211, 98, 679, 49, 42, "No"},
    {272, 136, 1080, 72, 64, "?"},
    {273, 128, 1016, 64, 56, "?"},
    {342, 171, 1530, 90, 81, "?"},
    {343, 162, 1449, 81, 72, "?"},
    {357, 141, 4935, 60, 51, "?"},
    {420, 210, 2090, 110, 100, "No"},
    {421, 200, 1990, 100, 90, "No"},
    {836, 346, 23874, 150, 136, "No"},
    {1675, 715, 85085, 315, 295, "?"},
    {3018, 1317, 247596, 588, 561, "?"},
    {5033, 2233, 623007, 1008, 973, "?"},
    {7912, 3556, 1404620, 1620, 1576, "?"},
    {11871, 5391, 2905749, 2475, 2421, "?"},
    {17150, 7855, 5608470, 3630, 3565, "?"},
    {517, 220, 4015, 99, 88, "?"},
    {1501, 665, 22078, 304, 285, "?"},
    {3451, 1566, 81693, 725, 696, "?"},
    {6847, 3157, 237226, 1476, 1435, "?"},
    {12265, 5720, 584155, 2695, 2640, "?"},
    {20377, 9585, 1275870, 4544, 4473, "?"},
    {31951, 15130, 2543353, 7209, 7120, "?"},
    {47851, 22781, 4717738, 10900, 10791, "?"},
};

bool integral(const Rational& q, Integer& out) {
    if (!q.is_integer()) return false;
    out = q.num();
    return true;
}

Integer exact_div(const Integer& n, long d) {
    if (n % d != 0) throw std::logic_error("closed form is not integral");
    return n / d;
}

void apply_filters(ParamRecord& p) {
    p.verdicts.clear();
    p.verdicts.push_back({"integrality", Verdict::Pass, "d,k,lambda,r,b,omega,a are positive integers"});

    const Integer f = calderbank_f(p.d, p.k, p.k - p.s1, p.k - p.s2);
    p.verdicts.push_back({"calderbank_inequality", f >= 0 ? Verdict::Pass : Verdict::Fail, "f=" + f.get_str()});

    FilterResult thm_a{"calderbank_theorem_a", Verdict::NotApplicable, ""};
    try {
        thm_a.verdict = calderbank_mod_a(p.d, p.k, p.lambda, p.r, {p.s1, p.s2});
    } catch (const NotApplicable& e) {
        thm_a.detail = e.what();
    }
    p.verdicts.push_back(thm_a);

    FilterResult fam{"calderbank_frankl_family", Verdict::NotApplicable, "not a family member"};
    if (auto mem = family_membership(p.s1, p.s2)) {
        fam.verdict = family_elimination(mem->first, mem->second);
        fam.detail = "family " + std::to_string(mem->first) + " i=" + std::to_string(mem->second);
    }
    p.verdicts.push_back(fam);

    p.paper = tabulated_existence(p.d, p.k, p.lambda, p.s1, p.s2);
}

}  // namespace

bool ParamRecord::infeasible() const {
    return std::any_of(verdicts.begin(), verdicts.end(), [](const FilterResult& f) { return f.verdict == Verdict::Fail; });
}

std::vector<std::string> ParamRecord::failed_filters() const {
    std::vector<std::string> out;
    for (const auto& f : verdicts)
        if (f.verdict == Verdict::Fail) out.push_back(f.name);
    return out;
}

std::string ParamRecord::verdict_string() const {
    std::string s;
    if (infeasible()) {
        s = "infeasible(";
        const auto names = failed_filters();
        for (std::size_t i = 0; i < names.size(); ++i) s += (i ? "+" : "") + names[i];
        s += ")";
    } else {
        s = "open";
    }
    if (!paper) return s + ";paper=unlisted";
    if (*paper == "No" && !infeasible()) return s + ";paper=No(unimplemented criterion)";
    return s + ";paper=" + *paper;
}

bool ParamRecord::sound() const { return !(infeasible() && paper && *paper != "No"); }

ParamResult params_from_s(const Integer& s1, const Integer& s2) {
    if (s2 < 0 || s1 <= s2) throw std::invalid_argument("need s1 > s2 >= 0");
    ParamRecord p;
    p.s1 = s1;
    p.s2 = s2;
    p.m = s1 - s2;
    p.rho = 2 * p.m + 1;
    p.k = p.m * p.m + s1;
    const Integer t = p.m * p.m + p.m + s1;
    const Rational d = Rational(t * t, s1) - Rational(Integer(2 * p.m));
    if (!integral(d, p.d)) return Infeasible{"d = " + d.str() + " is not an integer"};
    const Rational rho2(Integer(p.rho * p.rho));
    if (rho2 <= d) return Infeasible{"rho^2 <= d"};
    const Rational k(p.k);
    const Rational lambda = k * (k - 1) / (rho2 - d);
    if (!integral(lambda, p.lambda)) return Infeasible{"lambda = " + lambda.str() + " is not an integer"};
    const Rational r = lambda * (d - 1) / (k - 1);
    if (!integral(r, p.r)) return Infeasible{"r = " + r.str() + " is not an integer"};
    const Rational b = r * d / k;
    if (!integral(b, p.b)) return Infeasible{"b = " + b.str() + " is not an integer"};
    const Rational omega = d * (rho2 - 1) / (rho2 - d);
    if (!integral(omega, p.omega_size)) return Infeasible{"|Omega| = " + omega.str() + " is not an integer"};
    const Rational a = Rational(2) * lambda * (d - k) / (k - 1);
    if (!integral(a, p.a)) return Infeasible{"a = " + a.str() + " is not an integer"};
    if (p.d <= p.k || p.lambda <= 0 || p.a <= 0) return Infeasible{"degenerate parameters"};
    p.comp_s1 = p.d - 2 * p.k + s1;
    p.comp_s2 = p.d - 2 * p.k + s2;
    return p;
}

ParamResult evaluate(const Integer& s1, const Integer& s2) {
    ParamResult res = params_from_s(s1, s2);
    if (auto* p = std::get_if<ParamRecord>(&res)) apply_filters(*p);
    return res;
}

std::pair<Integer, Integer> s2_interval(const Integer& m) {
    if (m < 1) throw std::invalid_argument("m must be positive");
    const Integer a = 2 * m * (m + 1) - 1;
    const Integer q = isqrt((2 * m - 1) * (4 * m * m + 6 * m - 1));
    // with q = floor(sqrt(Delta)) the exact endpoints are ceil((a-q)/2) and floor((a+q)/2)
    Integer lo = a - q, hi = a + q;
    mpz_cdiv_q_ui(lo.get_mpz_t(), lo.get_mpz_t(), 2);
    mpz_fdiv_q_ui(hi.get_mpz_t(), hi.get_mpz_t(), 2);
    if (lo < 0) lo = 0;
    return {lo, hi};
}

std::vector<ParamRecord> scan(int m_max) {
    if (m_max < 1) throw std::invalid_argument("m_max must be positive");
    std::vector<std::pair<Integer, Integer>> grid;
    for (long m = 1; m <= m_max; ++m) {
        const auto [lo, hi] = s2_interval(Integer(m));
        for (Integer s2 = lo; s2 <= hi; ++s2) grid.emplace_back(s2 + m, s2);
    }
    std::vector<std::optional<ParamRecord>> slot(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        ParamResult r = evaluate(grid[i].first, grid[i].second);
        if (auto* p = std::get_if<ParamRecord>(&r)) slot[i] = std::move(*p);
    });
    std::vector<ParamRecord> out;
    for (auto& s : slot) {
        if (!s) continue;
        // keep the member of a complementary pair with the smaller k
        const Integer comp_k = s->d - s->k;
        if (comp_k < s->k) continue;
        out.push_back(std::move(*s));
    }
    std::sort(out.begin(), out.end(), [](const ParamRecord& x, const ParamRecord& y) {
        return x.m != y.m ? x.m < y.m : x.s2 < y.s2;
    });
    return out;
}

std::optional<std::pair<int, long>> family_membership(const Integer& s1, const Integer& s2) {
    const Integer m = s1 - s2;
    if (m <= 0) return std::nullopt;
    if (s2 == m * m && s1 == m * m + m) return std::make_pair(2, m.get_si());
    for (long i = 1;; ++i) {
        const Integer mi = Integer(i) * (i + 3) / 2;
        if (mi > m) break;
        if (mi < m) continue;
        const Integer f1 = exact_div(Integer(i) * (i + 2) * (i + 1) * (i + 1), 4);
        const Integer f2 = exact_div(Integer(i) * (Integer(i) * i * i + 4 * i * i + 3 * i - 4), 4);
        if (s1 == f1 && s2 == f2) return std::make_pair(1, i);
    }
    return std::nullopt;
}

Verdict family_elimination(int family, long i) {
    if (i < 1) throw std::invalid_argument("family index must be positive");
    switch (family) {
        case 1: return i % 8 == 4 ? Verdict::Fail : Verdict::Pass;
        case 2: return i % 4 == 2 ? Verdict::Fail : Verdict::Pass;
        case 3: return Verdict::NotApplicable;
    }
    throw std::invalid_argument("family must be 1, 2 or 3");
}

ParamRecord family_params(int family, long i) {
    if (i < 1) throw std::invalid_argument("family index must be positive");
    const Integer x(i);
    ParamRecord p;
    switch (family) {
        case 1: {
            const Integer c = x * x * x + 5 * x * x + 7 * x + 1;
            p.d = x * (x * x * x + 6 * x * x + 11 * x + 5);
            p.k = exact_div(x * c, 2);
            p.lambda = exact_div(x * (x + 2) * (x * x + 2 * x - 1) * c, 4);
            p.s1 = exact_div(x * (x + 2) * (x + 1) * (x + 1), 4);
            p.s2 = exact_div(x * (x * x * x + 4 * x * x + 3 * x - 4), 4);
            p.m = exact_div(x * (x + 3), 2);
            p.r = exact_div(x * (x * x * x + 5 * x * x + 6 * x - 1) * c, 2);
            p.omega_size = x * (x + 2) * (x + 3) * p.d;
            p.rho = x * x + 3 * x + 1;
            p.a = exact_div(x * x * (x + 3) * (x + 3) * c, 2);
            if (p.r - p.lambda != exact_div(x * x * (x + 3) * (x + 3) * c, 4))
                throw std::logic_error("family 1 r - lambda disagrees");
            break;
        }
        case 2:
            p.d = 2 * x * (2 * x + 1);
            p.k = x * (2 * x + 1);
            p.lambda = x * (2 * x - 1) * (x + 1);
            p.s1 = x * x + x;
            p.s2 = x * x;
            p.m = x;
            p.r = x * (4 * x * x + 2 * x - 1);
            p.omega_size = 8 * x * x * (x + 1);
            p.rho = 2 * x + 1;
            p.a = 2 * x * x * (2 * x + 1);
            if (p.r - p.lambda != x * x * (2 * x + 1)) throw std::logic_error("family 2 r - lambda disagrees");
            break;
        case 3: {
            const Integer u = x * x + x - 1;
            p.d = (4 * x * x + 4 * x - 1) * u;
            p.k = (2 * x - 1) * (x + 1) * u;
            p.lambda = (2 * x - 1) * u * (2 * x * x * x + 3 * x * x - 2 * x - 2);
            p.s1 = x * x * u;
            p.s2 = (x * x - 1) * u;
            p.m = u;
            p.r = (2 * x - 1) * (x + 1) * (4 * x * x + 4 * x - 5) * u;
            p.omega_size = 4 * u * u * (4 * x * x + 4 * x - 1);
            p.rho = 2 * x * x + 2 * x - 1;
            p.a = 2 * (2 * x - 1) * (2 * x + 3) * u * u;
            if (p.r - p.lambda != (2 * x - 1) * (2 * x + 3) * u * u)
                throw std::logic_error("family 3 r - lambda disagrees");
            break;
        }
        default:
            throw std::invalid_argument("family must be 1, 2 or 3");
    }
    p.b = p.r * p.d / p.k;
    ParamResult check = params_from_s(p.s1, p.s2);
    const auto* q = std::get_if<ParamRecord>(&check);
    if (!q) throw std::logic_error("family parameters fail the closed forms: " + std::get<Infeasible>(check).reason);
    if (q->d != p.d || q->k != p.k || q->lambda != p.lambda || q->r != p.r || q->b != p.b || q->m != p.m ||
        q->rho != p.rho || q->omega_size != p.omega_size || q->a != p.a)
        throw std::logic_error("family closed forms disagree at i=" + std::to_string(i));
    p.comp_s1 = q->comp_s1;
    p.comp_s2 = q->comp_s2;
    apply_filters(p);
    // membership lookup covers families 1 and 2; family 3 carries no congruence filter
    return p;
}

Problem2Params problem2_params(long i) {
    if (i < 1) throw std::invalid_argument("index must be positive");
    const Integer x(i);
    Problem2Params p;
    p.d = 2 * x * (2 * x + 1);
    p.three_design = {3, p.d, x * (2 * x + 1), x * (2 * x * x + x - 2), std::nullopt};
    p.derived = {2, p.d - 1, (2 * x - 1) * (x + 1), x * (2 * x * x + x - 2),
                 std::make_pair(Integer(x * x + x - 1), Integer(x * x - 1))};
    p.residual = {2, p.d - 1, x * (2 * x + 1), x * x * (2 * x + 1), std::make_pair(Integer(x * x + x), Integer(x * x))};
    p.a = 2 * x * x * (2 * x + 1);
    p.n = 8 * x * x * (x + 1);
    return p;
}

std::vector<std::pair<long long, long long>> elliptic_point_search(long long bound) {
    if (bound < 0) throw std::invalid_argument("bound must be non-negative");
    std::vector<std::pair<long long, long long>> out;
    for (long long x = -bound; x <= bound; ++x) {
        const __int128 X = x;
        const __int128 v = X * X * X - X * X - 5 * X + 6;
        if (v < 0) continue;
        auto r = static_cast<__int128>(std::sqrt(static_cast<long double>(v)));
        while (r * r > v) --r;
        while ((r + 1) * (r + 1) <= v) ++r;
        if (r * r != v) continue;
        const auto y = static_cast<long long>(r);
        if (y == 0) {
            out.emplace_back(x, 0);
        } else {
            out.emplace_back(x, -y);
            out.emplace_back(x, y);
        }
    }
    return out;
}

Rho29Rejection rho29_rejection() {
    Rho29Rejection out;
    ParamResult res = evaluate(Integer(147), Integer(133));
    if (!std::holds_alternative<ParamRecord>(res))
        throw std::logic_error("rho = 29 parameters fail integrality: " + std::get<Infeasible>(res).reason);
    out.record = std::get<ParamRecord>(res);
    const ParamRecord& p = out.record;
    const Rational rho(p.rho);
    out.calderbank_value = calderbank_f(Rational(p.d), Rational(p.k), (rho - 1) * (rho - 1) / 4,
                                        (rho * rho - 1) / 4);
    out.lambda3 = Rational(p.lambda) * Rational(Integer(p.k - 2)) / Rational(Integer(p.d - 2));
    out.gamma1 = p.k;
    out.gamma2 = p.d - p.k;
    out.rejected = out.calderbank_value.is_zero() && !out.lambda3.is_integer();
    return out;
}

ParamRecord remark_family_params(long i) {
    if (i < 1) throw std::invalid_argument("index must be positive");
    const Integer x(i);
    ParamResult res = evaluate(x * x, x * (x - 1));
    const auto* p = std::get_if<ParamRecord>(&res);
    if (!p) throw std::logic_error("remark family fails integrality at i=" + std::to_string(i));
    const Integer rho = 2 * x + 1;
    if (p->d != 4 * x * x + 2 * x + 1 || p->k != 2 * x * x || p->lambda != x * (2 * x * x - 1) || p->rho != rho ||
        p->omega_size != rho * rho * rho + 1 || p->a != (rho - 1) * (rho * rho + 1) / 2)
        throw std::logic_error("remark family closed forms disagree at i=" + std::to_string(i));
    return *p;
}

std::optional<std::string> tabulated_existence(const Integer& d, const Integer& k, const Integer& lambda,
                                               const Integer& s1, const Integer& s2) {
    for (const auto& row : kTabulated)
        if (d == row.d && k == row.k && lambda == row.lambda && s1 == row.s1 && s2 == row.s2) return row.existence;
    return std::nullopt;
}

}  // namespace eqlab
