#ifndef GRAZING_JET_HPP
#define GRAZING_JET_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace grazing {

/// First-order dual number. Used as the scalar type of a jet when a gradient
/// of a jet-computed quantity is needed without a second jet variable.
struct Dual {
    double v = 0.0;  // value
    double d = 0.0;  // derivative seed

    Dual() = default;
    Dual(double value) : v(value), d(0.0) {}
    Dual(double value, double deriv) : v(value), d(deriv) {}

    Dual operator-() const { return {-v, -d}; }
    Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
    friend Dual operator+(Dual a, const Dual& b) { return a += b; }
    friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
    friend Dual operator*(const Dual& a, const Dual& b) {
        return {a.v * b.v, a.v * b.d + a.d * b.v};
    }
    friend Dual operator/(const Dual& a, const Dual& b) {
        double q = a.v / b.v;
        return {q, (a.d - q * b.d) / b.v};
    }
};

inline Dual sin(const Dual& x) { return {std::sin(x.v), std::cos(x.v) * x.d}; }
inline Dual cos(const Dual& x) { return {std::cos(x.v), -std::sin(x.v) * x.d}; }
inline Dual exp(const Dual& x) { double e = std::exp(x.v); return {e, e * x.d}; }
inline Dual log(const Dual& x) { return {std::log(x.v), x.d / x.v}; }
inline Dual sqrt(const Dual& x) { double r = std::sqrt(x.v); return {r, x.d / (2.0 * r)}; }

/// The order-0 value of a scalar, used for domain checks.
inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

/// Truncated power series in one deformation variable. Coefficients are raw
/// power-series coefficients a_j of sum a_j t^j (NOT divided derivatives);
/// the j-th derivative is j! * a_j. Arithmetic never reads beyond order K.
template <class S = double>
class JetT {
  public:
    JetT() = default;
    JetT(int order, const S& c0) : a_(static_cast<size_t>(order) + 1, S(0.0)) {
        a_[0] = c0;
    }

    static JetT constant(int order, const S& c0) { return JetT(order, c0); }
    /// Seed a jet representing c0 + t.
    static JetT variable(int order, const S& c0) {
        JetT j(order, c0);
        if (order >= 1) j.a_[1] = S(1.0);
        return j;
    }

    int order() const { return static_cast<int>(a_.size()) - 1; }
    const S& operator[](int j) const { return a_[static_cast<size_t>(j)]; }
    S& operator[](int j) { return a_[static_cast<size_t>(j)]; }

    JetT operator-() const {
        JetT r = *this;
        for (auto& c : r.a_) c = -c;
        return r;
    }

    friend JetT operator+(const JetT& x, const JetT& y) {
        JetT r = x;
        for (int j = 0; j <= r.order(); ++j) r.a_[j] += y.a_[j];
        return r;
    }
    friend JetT operator-(const JetT& x, const JetT& y) {
        JetT r = x;
        for (int j = 0; j <= r.order(); ++j) r.a_[j] -= y.a_[j];
        return r;
    }
    friend JetT operator*(const JetT& x, const JetT& y) {
        const int K = x.order();
        JetT r(K, S(0.0));
        for (int j = 0; j <= K; ++j) {
            S acc(0.0);
            for (int i = 0; i <= j; ++i) acc += x.a_[i] * y.a_[j - i];
            r.a_[j] = acc;
        }
        return r;
    }
    /// Division; the caller must ensure the order-0 coefficient of y is nonzero.
    friend JetT operator/(const JetT& x, const JetT& y) {
        const int K = x.order();
        JetT q(K, S(0.0));
        for (int j = 0; j <= K; ++j) {
            S acc = x.a_[j];
            for (int i = 0; i < j; ++i) acc -= q.a_[i] * y.a_[j - i];
            q.a_[j] = acc / y.a_[0];
        }
        return q;
    }

    JetT& operator*=(const S& s) {
        for (auto& c : a_) c = c * s;
        return *this;
    }

  private:
    std::vector<S> a_;
};

/// Integer power by repeated multiplication; n >= 0. The order-0 sequence of
/// operations matches plain evaluation, so coefficient 0 is bit-identical to
/// the scalar path.
template <class S>
JetT<S> pow_int(const JetT<S>& x, int n) {
    JetT<S> r = JetT<S>::constant(x.order(), S(1.0));
    for (int i = 0; i < n; ++i) r = r * x;
    return r;
}

template <class S>
void sin_cos(const JetT<S>& u, JetT<S>& s, JetT<S>& c) {
    using std::sin;
    using std::cos;
    const int K = u.order();
    s = JetT<S>(K, sin(u[0]));
    c = JetT<S>(K, cos(u[0]));
    // s' = c u', c' = -s u' matched coefficientwise.
    for (int j = 1; j <= K; ++j) {
        S as(0.0), ac(0.0);
        for (int i = 1; i <= j; ++i) {
            as += S(double(i)) * u[i] * c[j - i];
            ac += S(double(i)) * u[i] * s[j - i];
        }
        s[j] = as / S(double(j));
        c[j] = -ac / S(double(j));
    }
}

template <class S>
JetT<S> exp(const JetT<S>& u) {
    using std::exp;
    const int K = u.order();
    JetT<S> e(K, exp(u[0]));
    for (int j = 1; j <= K; ++j) {
        S acc(0.0);
        for (int i = 1; i <= j; ++i) acc += S(double(i)) * u[i] * e[j - i];
        e[j] = acc / S(double(j));
    }
    return e;
}

/// Natural log; caller ensures u[0] > 0.
template <class S>
JetT<S> log(const JetT<S>& u) {
    using std::log;
    const int K = u.order();
    JetT<S> l(K, log(u[0]));
    for (int j = 1; j <= K; ++j) {
        S acc = S(double(j)) * u[j];
        for (int i = 1; i < j; ++i) acc -= S(double(i)) * l[i] * u[j - i];
        l[j] = acc / (S(double(j)) * u[0]);
    }
    return l;
}

/// Square root; caller ensures u[0] > 0.
template <class S>
JetT<S> sqrt(const JetT<S>& u) {
    using std::sqrt;
    const int K = u.order();
    JetT<S> r(K, sqrt(u[0]));
    for (int j = 1; j <= K; ++j) {
        S acc = u[j];
        for (int i = 1; i < j; ++i) acc -= r[i] * r[j - i];
        r[j] = acc / (S(2.0) * r[0]);
    }
    return r;
}

using Jet = JetT<double>;

}  // namespace grazing

#endif
