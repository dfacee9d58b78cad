#pragma once

// Floating-point expansion arithmetic: a value is an unevaluated sum of doubles
// with non-overlapping components in increasing magnitude order.

#include <cmath>
#include <limits>
#include <vector>

namespace polyvis::expansion {

inline constexpr double kEpsilon = std::numeric_limits<double>::epsilon() * 0.5;

constexpr double SplitterFor(int digits) {
    double s = 1.0;
    for (int i = 0; i < (digits + 1) / 2; ++i) s *= 2.0;
    return s + 1.0;
}

inline constexpr double kSplitter = SplitterFor(std::numeric_limits<double>::digits);

inline void FastTwoSum(double a, double b, double &x, double &y) {
    x = a + b;
    double bvirt = x - a;
    y = b - bvirt;
}

inline void TwoSum(double a, double b, double &x, double &y) {
    x = a + b;
    double bvirt = x - a;
    double avirt = x - bvirt;
    double bround = b - bvirt;
    double around = a - avirt;
    y = around + bround;
}

inline double TwoDiffTail(double a, double b, double x) {
    double bvirt = a - x;
    double avirt = x + bvirt;
    double bround = bvirt - b;
    double around = a - avirt;
    return around + bround;
}

inline void TwoDiff(double a, double b, double &x, double &y) {
    x = a - b;
    y = TwoDiffTail(a, b, x);
}

inline void Split(double a, double &hi, double &lo) {
    double c = kSplitter * a;
    double abig = c - a;
    hi = c - abig;
    lo = a - hi;
}

inline void TwoProductPresplit(double a, double b, double bhi, double blo, double &x, double &y) {
    x = a * b;
    double ahi, alo;
    Split(a, ahi, alo);
    double err1 = x - (ahi * bhi);
    double err2 = err1 - (alo * bhi);
    double err3 = err2 - (ahi * blo);
    y = (alo * blo) - err3;
}

inline void TwoProduct(double a, double b, double &x, double &y) {
    double bhi, blo;
    Split(b, bhi, blo);
    TwoProductPresplit(a, b, bhi, blo, x, y);
}

inline void TwoOneDiff(double a1, double a0, double b, double &x2, double &x1, double &x0) {
    double i;
    TwoDiff(a0, b, i, x0);
    TwoSum(a1, i, x2, x1);
}

inline void TwoTwoDiff(double a1, double a0, double b1, double b0, double &x3, double &x2, double &x1,
                       double &x0) {
    double j, z;
    TwoOneDiff(a1, a0, b0, j, z, x0);
    TwoOneDiff(j, z, b1, x3, x2, x1);
}

inline double Estimate(int len, const double *e) {
    double q = e[0];
    for (int i = 1; i < len; ++i) q += e[i];
    return q;
}

/// h = e + f with zero components removed; h needs room for elen + flen values.
inline int FastExpansionSumZeroElim(int elen, const double *e, int flen, const double *f, double *h) {
    auto at = [](const double *arr, int idx, int len) { return idx < len ? arr[idx] : 0.0; };
    int ei = 0, fi = 0, hi = 0;
    double enow = e[0], fnow = f[0];
    double Q, Qnew, hh;
    if ((fnow > enow) == (fnow > -enow)) {
        Q = enow;
        enow = at(e, ++ei, elen);
    } else {
        Q = fnow;
        fnow = at(f, ++fi, flen);
    }
    if (ei < elen && fi < flen) {
        if ((fnow > enow) == (fnow > -enow)) {
            FastTwoSum(enow, Q, Qnew, hh);
            enow = at(e, ++ei, elen);
        } else {
            FastTwoSum(fnow, Q, Qnew, hh);
            fnow = at(f, ++fi, flen);
        }
        Q = Qnew;
        if (hh != 0.0) h[hi++] = hh;
        while (ei < elen && fi < flen) {
            if ((fnow > enow) == (fnow > -enow)) {
                TwoSum(Q, enow, Qnew, hh);
                enow = at(e, ++ei, elen);
            } else {
                TwoSum(Q, fnow, Qnew, hh);
                fnow = at(f, ++fi, flen);
            }
            Q = Qnew;
            if (hh != 0.0) h[hi++] = hh;
        }
    }
    while (ei < elen) {
        TwoSum(Q, enow, Qnew, hh);
        enow = at(e, ++ei, elen);
        Q = Qnew;
        if (hh != 0.0) h[hi++] = hh;
    }
    while (fi < flen) {
        TwoSum(Q, fnow, Qnew, hh);
        fnow = at(f, ++fi, flen);
        Q = Qnew;
        if (hh != 0.0) h[hi++] = hh;
    }
    if (Q != 0.0 || hi == 0) h[hi++] = Q;
    return hi;
}

/// h = b * e with zero components removed; h needs room for 2 * elen values.
inline int ScaleExpansionZeroElim(int elen, const double *e, double b, double *h) {
    double bhi, blo, Q, hh, p1, p0, sum;
    Split(b, bhi, blo);
    TwoProductPresplit(e[0], b, bhi, blo, Q, hh);
    int hi = 0;
    if (hh != 0.0) h[hi++] = hh;
    for (int i = 1; i < elen; ++i) {
        TwoProductPresplit(e[i], b, bhi, blo, p1, p0);
        TwoSum(Q, p0, sum, hh);
        if (hh != 0.0) h[hi++] = hh;
        FastTwoSum(p1, sum, Q, hh);
        if (hh != 0.0) h[hi++] = hh;
    }
    if (Q != 0.0 || hi == 0) h[hi++] = Q;
    return hi;
}

/// Heap-backed expansion for the rare exact fallbacks.
class Expansion {
public:
    Expansion() : c_{0.0} {}
    explicit Expansion(double v) : c_{v} {}

    static Expansion Diff(double a, double b) {
        Expansion r;
        double x, y;
        TwoDiff(a, b, x, y);
        r.c_.clear();
        if (y != 0.0) r.c_.push_back(y);
        r.c_.push_back(x);
        return r;
    }

    friend Expansion operator+(const Expansion &a, const Expansion &b) {
        Expansion r;
        r.c_.resize(a.c_.size() + b.c_.size());
        int n = FastExpansionSumZeroElim(static_cast<int>(a.c_.size()), a.c_.data(),
                                         static_cast<int>(b.c_.size()), b.c_.data(), r.c_.data());
        r.c_.resize(n);
        return r;
    }

    Expansion operator-() const {
        Expansion r = *this;
        for (double &v : r.c_) v = -v;
        return r;
    }

    friend Expansion operator-(const Expansion &a, const Expansion &b) { return a + (-b); }

    [[nodiscard]] Expansion Scale(double b) const {
        Expansion r;
        r.c_.resize(2 * c_.size());
        int n = ScaleExpansionZeroElim(static_cast<int>(c_.size()), c_.data(), b, r.c_.data());
        r.c_.resize(n);
        return r;
    }

    friend Expansion operator*(const Expansion &a, const Expansion &b) {
        Expansion acc;
        for (double comp : b.c_) {
            if (comp == 0.0) continue;
            acc = acc + a.Scale(comp);
        }
        return acc;
    }

    [[nodiscard]] int Sign() const {
        double top = c_.back();
        return top > 0.0 ? 1 : (top < 0.0 ? -1 : 0);
    }

    [[nodiscard]] double Approx() const { return Estimate(static_cast<int>(c_.size()), c_.data()); }

private:
    std::vector<double> c_;
};

} // namespace polyvis::expansion
