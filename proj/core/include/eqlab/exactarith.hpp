#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqlab {

using Integer = mpz_class;

struct RadicandMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rational in lowest terms with positive denominator.
class Rational {
public:
    Rational() = default;
    Rational(int v) : q_(v) {}
    Rational(long v) : q_(v) {}
    Rational(const Integer& v) : q_(v) {}
    Rational(const Integer& num, const Integer& den);
    explicit Rational(const mpq_class& q);

    // Accepts "p" or "p/q" with optional sign; throws std::invalid_argument.
    static Rational parse(std::string_view text);

    Integer num() const { return q_.get_num(); }
    Integer den() const { return q_.get_den(); }
    const mpq_class& value() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    bool is_zero() const { return sgn(q_) == 0; }
    int sign() const { return sgn(q_); }
    std::string str() const { return q_.get_str(); }

    Rational abs() const;
    Rational inverse() const;

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const;

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class q_;
};

Integer isqrt(const Integer& n);             // floor square root, n >= 0
bool is_square(const Integer& n);
bool rational_sqrt(const Rational& q, Rational& root);  // true if q is a rational square
Integer binomial(long n, long k);            // 0 outside 0 <= k <= n
Rational pow(const Rational& base, unsigned exponent);

// a + b*sqrt(D). D = 0 marks a pure rational that combines with any radicand.
class QuadScalar {
public:
    QuadScalar() = default;
    QuadScalar(int v) : rat_(v) {}
    QuadScalar(long v) : rat_(v) {}
    QuadScalar(const Rational& r) : rat_(r) {}
    QuadScalar(const Rational& rat, const Rational& coeff, const Rational& radicand);

    // sqrt(q) expressed over sqrt(radicand); throws RadicandMismatch if q/radicand is no square.
    static QuadScalar sqrt_of(const Rational& q, const Rational& radicand);
    // Radicand suitable for sqrt(q): a squarefree-reduced integer, or 0 when q is a square.
    static Rational radicand_for(const Rational& q);

    const Rational& rat() const { return rat_; }
    const Rational& coeff() const { return coeff_; }
    const Rational& radicand() const { return radicand_; }

    bool is_rational() const { return coeff_.is_zero(); }
    bool is_zero() const { return rat_.is_zero() && coeff_.is_zero(); }
    int sign() const;
    QuadScalar conjugate() const;
    Rational field_norm() const;  // a^2 - b^2 D
    QuadScalar abs() const { return sign() < 0 ? -*this : *this; }
    std::string str() const;

    QuadScalar& operator+=(const QuadScalar& o);
    QuadScalar& operator-=(const QuadScalar& o);
    QuadScalar& operator*=(const QuadScalar& o);
    QuadScalar& operator/=(const QuadScalar& o);
    friend QuadScalar operator+(QuadScalar a, const QuadScalar& b) { return a += b; }
    friend QuadScalar operator-(QuadScalar a, const QuadScalar& b) { return a -= b; }
    friend QuadScalar operator*(QuadScalar a, const QuadScalar& b) { return a *= b; }
    friend QuadScalar operator/(QuadScalar a, const QuadScalar& b) { return a /= b; }
    QuadScalar operator-() const;

    // Value equality; throws RadicandMismatch on incompatible surds.
    friend bool operator==(const QuadScalar& a, const QuadScalar& b);
    friend std::strong_ordering operator<=>(const QuadScalar& a, const QuadScalar& b);

private:
    void normalize();
    const Rational& join_radicand(const QuadScalar& o) const;

    Rational rat_;
    Rational coeff_;
    Rational radicand_;
};

QuadScalar quad_mul(const QuadScalar& x, const QuadScalar& y);

using QuadVector = std::vector<QuadScalar>;
using RationalVector = std::vector<Rational>;

QuadScalar inner_product(const QuadVector& u, const QuadVector& v);
Rational inner_product(const RationalVector& u, const RationalVector& v);

// Common radicand of a collection; 0 when every entry is rational.
Rational common_radicand(const QuadVector& entries);

class ExactMatrix {
public:
    ExactMatrix() = default;
    ExactMatrix(std::size_t rows, std::size_t cols);
    static ExactMatrix identity(std::size_t n);
    static ExactMatrix from_rows(const std::vector<QuadVector>& rows);
    static ExactMatrix from_rows(const std::vector<RationalVector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    QuadScalar& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const QuadScalar& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    QuadVector row(std::size_t i) const;
    ExactMatrix transpose() const;
    bool is_symmetric() const;
    bool is_rational() const;
    QuadVector apply(const QuadVector& v) const;

    std::size_t rank() const;
    QuadScalar determinant() const;
    // Sylvester's criterion on the leading principal minors.
    bool is_positive_definite() const;

    friend bool operator==(const ExactMatrix& a, const ExactMatrix& b);

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<QuadScalar> a_;
};

// Gram matrix of the rows of `vectors` under `form` (identity when empty).
ExactMatrix gram_matrix(const std::vector<QuadVector>& vectors, const ExactMatrix* form = nullptr);

inline std::ostream& operator<<(std::ostream& o, const Rational& x) { return o << x.str(); }
inline std::ostream& operator<<(std::ostream& o, const QuadScalar& x) { return o << x.str(); }

}  // namespace eqlab
