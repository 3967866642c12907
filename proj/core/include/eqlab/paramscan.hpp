#pragma once

#include "eqlab/designkit.hpp"
#include "eqlab/exactarith.hpp"

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace eqlab {

struct FilterResult {
    std::string name;
    Verdict verdict = Verdict::NotApplicable;
    std::string detail;
};

// Parameters of a candidate 2-(d,k,lambda;s1,s2) design and the line system it would give.
struct ParamRecord {
    Integer s1, s2, m, rho;
    Integer d, k, lambda, r, b;
    Integer omega_size, a;
    std::vector<FilterResult> verdicts;
    Integer comp_s1, comp_s2;               // the complementary block set
    std::optional<std::string> paper;       // "Yes", "No" or "?" when the tables list the row

    bool infeasible() const;
    std::vector<std::string> failed_filters() const;
    // Computed verdict joined with the tabulated one, e.g. "open;paper=?".
    std::string verdict_string() const;
    // False when a computed rejection hits a row the tables list as existing or open.
    bool sound() const;
};

struct Infeasible {
    std::string reason;
};

using ParamResult = std::variant<ParamRecord, Infeasible>;

// Closed forms in (s1, s2) with the integrality screen; filters are not applied.
ParamResult params_from_s(const Integer& s1, const Integer& s2);
// Same, plus every implemented filter and the table annotation.
ParamResult evaluate(const Integer& s1, const Integer& s2);

// Integer s2 admitted by rho^2 >= d + 2 for a given m = s1 - s2.
std::pair<Integer, Integer> s2_interval(const Integer& m);

// Canonical records (smaller k of each complementary pair) for 1 <= m <= m_max, sorted by (m, s2).
std::vector<ParamRecord> scan(int m_max);

// Table 2 closed forms; throws std::logic_error if they disagree with params_from_s.
ParamRecord family_params(int family, long i);
// Calderbank-Frankl congruences: family 1 dies at i = 4 mod 8, family 2 at i = 2 mod 4.
Verdict family_elimination(int family, long i);
// Which family (1 or 2) and index the record belongs to, if any.
std::optional<std::pair<int, long>> family_membership(const Integer& s1, const Integer& s2);

struct DesignParams {
    int t = 2;
    Integer v, k, lambda;
    std::optional<std::pair<Integer, Integer>> intersections;
};

struct Problem2Params {
    DesignParams three_design, derived, residual;
    Integer a, n, d;
};

Problem2Params problem2_params(long i);

// Integer points of y^2 = x^3 - x^2 - 5x + 6 with |x| <= bound, sorted by (x, y).
std::vector<std::pair<long long, long long>> elliptic_point_search(long long bound);

struct Rho29Rejection {
    ParamRecord record;
    Rational calderbank_value;  // zero forces a 3-design
    Rational lambda3;
    bool rejected = false;
    Integer gamma1, gamma2;     // part sizes |Gamma_1|, |Gamma_2|
};

Rho29Rejection rho29_rejection();

ParamRecord remark_family_params(long i);

// Existence column of the published tables for (d,k,lambda,s1,s2).
std::optional<std::string> tabulated_existence(const Integer& d, const Integer& k, const Integer& lambda,
                                               const Integer& s1, const Integer& s2);

}  // namespace eqlab
