#pragma once

// Sparse multivariate polynomials over Q. Terms are kept sorted in graded
// lexicographic order with no zero coefficients, so equal polynomials have
// identical representations and all printing is deterministic.

#include "hochlab/multi_index.hpp"
#include "hochlab/rational.hpp"

#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hochlab {

class Poly {
  public:
    using Term = std::pair<MultiIndex, Rational>;

    explicit Poly(int dim) : dim_(dim)
    {
        if (dim <= 0)
            throw std::invalid_argument("Poly: dimension must be positive");
    }

    static Poly zero(int dim) { return Poly(dim); }

    static Poly constant(int dim, const Rational &c)
    {
        Poly p(dim);
        if (!c.is_zero())
            p.terms_.emplace_back(MultiIndex(dim), c);
        return p;
    }

    static Poly monomial(const MultiIndex &m, const Rational &c)
    {
        Poly p(m.dim());
        if (!c.is_zero())
            p.terms_.emplace_back(m, c);
        return p;
    }

    // 0-based axis.
    static Poly variable(int dim, int axis)
    {
        if (axis < 0 || axis >= dim)
            throw std::invalid_argument("Poly::variable: axis out of range");
        return monomial(MultiIndex::unit(dim, axis), Rational(1));
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    Poly zero_like() const { return Poly(dim_); }
    const std::vector<Term> &terms() const { return terms_; }

    int degree() const
    {
        int d = -1;
        for (const Term &t : terms_)
            d = std::max(d, t.first.total());
        return d; // -1 for the zero polynomial
    }

    bool is_constant() const
    {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_zero());
    }

    Rational coeff(const MultiIndex &m) const
    {
        for (const Term &t : terms_)
            if (t.first == m)
                return t.second;
        return Rational();
    }

    Rational constant_term() const { return coeff(MultiIndex(dim_)); }

    Poly &operator+=(const Poly &o)
    {
        check_dim(o);
        std::map<MultiIndex, Rational, GrlexLess> acc;
        for (const Term &t : terms_)
            acc[t.first] = t.second;
        for (const Term &t : o.terms_) {
            Rational &c = acc[t.first];
            c += t.second;
        }
        from_map(acc);
        return *this;
    }

    Poly &operator-=(const Poly &o) { return *this += -o; }

    Poly operator-() const
    {
        Poly r(dim_);
        r.terms_.reserve(terms_.size());
        for (const Term &t : terms_)
            r.terms_.emplace_back(t.first, -t.second);
        return r;
    }

    friend Poly operator+(Poly a, const Poly &b) { return a += b; }
    friend Poly operator-(Poly a, const Poly &b) { return a -= b; }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        a.check_dim(b);
        std::map<MultiIndex, Rational, GrlexLess> acc;
        for (const Term &ta : a.terms_)
            for (const Term &tb : b.terms_) {
                Rational &c = acc[ta.first + tb.first];
                c += ta.second * tb.second;
            }
        Poly r(a.dim_);
        r.from_map(acc);
        return r;
    }

    Poly scaled(const Rational &c) const
    {
        Poly r(dim_);
        if (c.is_zero())
            return r;
        r.terms_.reserve(terms_.size());
        for (const Term &t : terms_)
            r.terms_.emplace_back(t.first, t.second * c);
        return r;
    }

    friend Poly operator*(const Rational &c, const Poly &p) { return p.scaled(c); }
    friend Poly operator*(const Poly &p, const Rational &c) { return p.scaled(c); }

    // d/dx_axis, 0-based.
    Poly partial(int axis) const
    {
        if (axis < 0 || axis >= dim_)
            throw std::invalid_argument("Poly::partial: axis out of range");
        Poly r(dim_);
        for (const Term &t : terms_) {
            if (t.first[axis] == 0)
                continue;
            MultiIndex m = t.first;
            Rational c = t.second * Rational(m[axis]);
            m[axis] -= 1;
            r.terms_.emplace_back(m, c);
        }
        // termwise derivative preserves grlex order except for merges; re-sort
        std::sort(r.terms_.begin(), r.terms_.end(),
                  [](const Term &x, const Term &y) { return grlex_cmp(x.first, y.first) < 0; });
        return r;
    }

    // Applies the derivative word d^w.
    Poly derivative(const MultiIndex &w) const
    {
        if (w.dim() != dim_)
            throw std::invalid_argument("Poly::derivative: dimension mismatch");
        std::map<MultiIndex, Rational, GrlexLess> acc;
        for (const Term &t : terms_) {
            Rational c = mi_falling(t.first, w);
            if (c.is_zero())
                continue;
            Rational &slot = acc[mi_sub(t.first, w)];
            slot += t.second * c;
        }
        Poly r(dim_);
        r.from_map(acc);
        return r;
    }

    // Drops the constant term (canonical representative in A modulo constants).
    Poly drop_constant() const
    {
        Poly r(dim_);
        for (const Term &t : terms_)
            if (!t.first.is_zero())
                r.terms_.push_back(t);
        return r;
    }

    friend bool operator==(const Poly &a, const Poly &b)
    {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Poly &a, const Poly &b) { return !(a == b); }

    // Total order (dimension, then termwise grlex/coefficient), for use as a
    // map key and for canonical sorting of tuples of polynomials.
    friend int cmp(const Poly &a, const Poly &b)
    {
        if (a.dim_ != b.dim_)
            return a.dim_ < b.dim_ ? -1 : 1;
        std::size_t n = std::min(a.terms_.size(), b.terms_.size());
        for (std::size_t i = 0; i < n; ++i) {
            int c = grlex_cmp(a.terms_[i].first, b.terms_[i].first);
            if (c != 0)
                return c;
            c = cmp(a.terms_[i].second, b.terms_[i].second);
            if (c != 0)
                return c;
        }
        if (a.terms_.size() != b.terms_.size())
            return a.terms_.size() < b.terms_.size() ? -1 : 1;
        return 0;
    }

    friend bool operator<(const Poly &a, const Poly &b) { return cmp(a, b) < 0; }

    // "3*x1^2*x2 - 1/2*x2^3"; highest term first. With xy_style (d <= 4),
    // variables print as x, y, z, w.
    std::string str(bool xy_style = false) const
    {
        if (terms_.empty())
            return "0";
        std::ostringstream os;
        for (std::size_t i = terms_.size(); i-- > 0;) {
            const Term &t = terms_[i];
            bool lead = (i + 1 == terms_.size());
            Rational c = t.second;
            if (!lead)
                os << (c.sign() < 0 ? " - " : " + ");
            else if (c.sign() < 0)
                os << "-";
            Rational ac = c.sign() < 0 ? -c : c;
            bool has_vars = !t.first.is_zero();
            if (!has_vars || !ac.is_one()) {
                os << ac.str();
                if (has_vars)
                    os << "*";
            }
            bool first_var = true;
            for (int ax = 0; ax < dim_; ++ax) {
                int e = t.first[ax];
                if (e == 0)
                    continue;
                if (!first_var)
                    os << "*";
                first_var = false;
                if (xy_style && dim_ <= 4)
                    os << "xyzw"[ax];
                else
                    os << "x" << (ax + 1);
                if (e > 1)
                    os << "^" << e;
            }
        }
        return os.str();
    }

    static Poly parse(std::string_view text, int dim);

  private:
    struct GrlexLess {
        bool operator()(const MultiIndex &a, const MultiIndex &b) const
        {
            return grlex_cmp(a, b) < 0;
        }
    };

    void check_dim(const Poly &o) const
    {
        if (dim_ != o.dim_)
            throw std::invalid_argument("Poly: dimension mismatch");
    }

    void from_map(const std::map<MultiIndex, Rational, GrlexLess> &acc)
    {
        terms_.clear();
        for (const auto &kv : acc)
            if (!kv.second.is_zero())
                terms_.emplace_back(kv.first, kv.second);
    }

    int dim_;
    std::vector<Term> terms_;
};

namespace detail {

class PolyParser {
  public:
    PolyParser(std::string_view s, int dim) : s_(s), dim_(dim) {}

    Poly run()
    {
        Poly acc(dim_);
        skip_ws();
        bool first = true;
        while (!eof()) {
            int sign = 1;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1 : 1;
                ++pos_;
                skip_ws();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            acc += parse_term().scaled(Rational(sign));
            skip_ws();
            first = false;
        }
        if (first)
            fail("empty input");
        return acc;
    }

  private:
    Poly parse_term()
    {
        Rational coeff(1);
        MultiIndex expo(dim_);
        bool saw_factor = false;
        for (;;) {
            skip_ws();
            if (eof())
                break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= parse_rational();
                saw_factor = true;
            } else if (is_var_start(c)) {
                auto [axis, power] = parse_var();
                expo[axis] += power;
                saw_factor = true;
            } else {
                break;
            }
            skip_ws();
            if (!eof() && peek() == '*') {
                ++pos_;
                continue;
            }
            // juxtaposition without '*' is also accepted
            if (!eof() && (std::isdigit(static_cast<unsigned char>(peek())) || is_var_start(peek())))
                continue;
            break;
        }
        if (!saw_factor)
            fail("expected a term");
        return Poly::monomial(expo, coeff);
    }

    Rational parse_rational()
    {
        std::size_t start = pos_;
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
            ++pos_;
        std::string num(s_.substr(start, pos_ - start));
        skip_ws();
        if (!eof() && peek() == '/') {
            std::size_t save = pos_;
            ++pos_;
            skip_ws();
            if (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
                std::size_t dstart = pos_;
                while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                    ++pos_;
                std::string den(s_.substr(dstart, pos_ - dstart));
                return Rational::parse(num + "/" + den);
            }
            pos_ = save;
        }
        return Rational::parse(num);
    }

    bool is_var_start(char c) const
    {
        if (c == 'x')
            return true;
        return dim_ <= 4 && (c == 'y' || c == 'z' || c == 'w');
    }

    std::pair<int, int> parse_var()
    {
        char c = peek();
        ++pos_;
        int axis;
        if (c == 'x' && !eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t start = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            axis = std::stoi(std::string(s_.substr(start, pos_ - start))) - 1;
        } else {
            // single-letter alias x, y, z, w
            axis = std::string("xyzw").find(c);
        }
        if (axis < 0 || axis >= dim_)
            fail("variable index out of range");
        int power = 1;
        skip_ws();
        if (!eof() && peek() == '^') {
            ++pos_;
            skip_ws();
            if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
                fail("expected exponent");
            std::size_t start = pos_;
            while (!eof() && std::isdigit(static_cast<unsigned char>(peek())))
                ++pos_;
            power = std::stoi(std::string(s_.substr(start, pos_ - start)));
        }
        return {axis, power};
    }

    void skip_ws()
    {
        while (!eof() && std::isspace(static_cast<unsigned char>(peek())))
            ++pos_;
    }

    bool eof() const { return pos_ >= s_.size(); }
    char peek() const { return s_[pos_]; }

    [[noreturn]] void fail(const std::string &why) const
    {
        throw std::invalid_argument("Poly::parse: " + why + " at position " +
                                    std::to_string(pos_) + " in '" + std::string(s_) + "'");
    }

    std::string_view s_;
    int dim_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline Poly Poly::parse(std::string_view text, int dim)
{
    return detail::PolyParser(text, dim).run();
}

} // namespace hochlab
