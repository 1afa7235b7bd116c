#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <random>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "loewner/detail/numeric_text.hpp"
#include "loewner/error.hpp"
#include "loewner/scalarfn.hpp"

namespace loewner {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;
using Rng = std::mt19937_64;

/// Relative tolerance on |a_ij - conj(a_ji)| accepted as Hermitian.
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues this close to a closed domain endpoint are clamped onto it.
inline constexpr double kSpectrumSlack = 1e-10;

/// Dense n x n complex Hermitian matrix. The stored entries are exactly Hermitian:
/// the constructor validates within tolerance, then symmetrizes.
class HermitianMatrix {
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols())
            throw NotHermitian("matrix is " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                               ", not square");
        double scale = 1.0 + (m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0);
        double asym = m_.size() ? (m_ - m_.adjoint()).cwiseAbs().maxCoeff() : 0.0;
        if (!(asym <= kHermitianTol * scale))
            throw NotHermitian("matrix is not Hermitian (max asymmetry " + detail::to_text(asym) + ")");
        symmetrize();
    }

    static HermitianMatrix from_real(const Eigen::MatrixXd& m) { return HermitianMatrix(m.cast<Complex>()); }

    /// Real symmetric matrix from rows, e.g. {{1, 2}, {2, 5}}.
    static HermitianMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
        Index n = static_cast<Index>(rows.size());
        ComplexMatrix m = ComplexMatrix::Zero(n, n);
        Index i = 0;
        for (const auto& row : rows) {
            if (static_cast<Index>(row.size()) != n) throw NotHermitian("ragged row in matrix literal");
            Index j = 0;
            for (double v : row) m(i, j++) = v;
            ++i;
        }
        return HermitianMatrix(std::move(m));
    }

    static HermitianMatrix identity(Index n) { return trusted(ComplexMatrix::Identity(n, n)); }
    static HermitianMatrix zero(Index n) { return trusted(ComplexMatrix::Zero(n, n)); }
    static HermitianMatrix diagonal(const RealVector& d) { return trusted(d.cast<Complex>().asDiagonal()); }
    static HermitianMatrix diagonal(std::initializer_list<double> d) {
        RealVector v(static_cast<Index>(d.size()));
        Index i = 0;
        for (double x : d) v(i++) = x;
        return diagonal(v);
    }

    /// Wraps a matrix known to be Hermitian up to rounding (sums, congruences, ...).
    static HermitianMatrix trusted(ComplexMatrix m) {
        HermitianMatrix h;
        h.m_ = std::move(m);
        h.symmetrize();
        return h;
    }

    Index dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }

    /// <A x, x> (real for Hermitian A).
    double expect(const ComplexVector& x) const { return x.dot(m_ * x).real(); }

    double frobenius_norm() const { return m_.norm(); }

    /// U A U*; U need not be square (n x k gives an n x n result for a k x k A).
    HermitianMatrix congruence(const ComplexMatrix& u) const { return trusted(u * m_ * u.adjoint()); }

    HermitianMatrix& operator+=(const HermitianMatrix& o) {
        require_same_dim(o);
        m_ += o.m_;
        return *this;
    }
    HermitianMatrix& operator-=(const HermitianMatrix& o) {
        require_same_dim(o);
        m_ -= o.m_;
        return *this;
    }
    HermitianMatrix& operator*=(double s) {
        m_ *= s;
        return *this;
    }

    friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
    friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
    friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
    friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

    /// A + s I
    HermitianMatrix shifted(double s) const {
        HermitianMatrix r = *this;
        r.m_.diagonal().array() += s;
        return r;
    }

private:
    void symmetrize() {
        ComplexMatrix sym = 0.5 * (m_ + m_.adjoint());
        m_ = std::move(sym);
        for (Index i = 0; i < m_.rows(); ++i) m_(i, i) = m_(i, i).real();
    }

    void require_same_dim(const HermitianMatrix& o) const {
        if (o.dim() != dim())
            throw DimensionMismatch("dimension " + std::to_string(dim()) + " vs " + std::to_string(o.dim()));
    }

    ComplexMatrix m_;
};

/// Eigenvalues ascending; eigenvector columns orthonormal, in matching order.
struct SpectralDecomposition {
    RealVector eigenvalues;
    ComplexMatrix eigenvectors;

    /// U diag(g(lambda_i)) U*
    template <class Fn>
    HermitianMatrix rebuild(Fn&& g) const {
        RealVector mapped(eigenvalues.size());
        for (Index i = 0; i < eigenvalues.size(); ++i) mapped(i) = g(eigenvalues(i));
        return rebuild_with(mapped);
    }

    HermitianMatrix rebuild_with(const RealVector& values) const {
        return HermitianMatrix::trusted(eigenvectors * values.cast<Complex>().asDiagonal() * eigenvectors.adjoint());
    }

    double min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
    double max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
};

/// Cyclic complex Jacobi eigensolver. Each rotation first removes the phase of a_pq with
/// a diagonal unitary, then applies the real symmetric Jacobi rotation. Sweeps stop once the
/// off-diagonal Frobenius norm is <= 1e-13 ||A||_F.
inline SpectralDecomposition spectral_decompose(const HermitianMatrix& input) {
    const Index n = input.dim();
    ComplexMatrix a = input.matrix();
    ComplexMatrix v = ComplexMatrix::Identity(n, n);

    const double norm = a.norm();
    const double threshold = 1e-13 * norm;
    auto off_norm = [&] {
        double s = 0.0;
        for (Index j = 0; j < n; ++j)
            for (Index i = 0; i < n; ++i)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && norm > 0.0; ++sweep) {
        if (off_norm() <= threshold) break;
        for (Index p = 0; p < n - 1; ++p) {
            for (Index q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double r = std::abs(apq);
                if (r == 0.0) continue;
                const Complex phase_conj = std::conj(apq) / r;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                double t;
                if (std::abs(theta) > 1e150)
                    t = 0.5 / theta;
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * phase_conj;
                const Complex jqq = c * phase_conj;

                for (Index k = 0; k < n; ++k) { // A <- A J
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (Index k = 0; k < n; ++k) { // A <- J* A
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                for (Index k = 0; k < n; ++k) { // V <- V J
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
            }
        }
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i).real() < a(j, j).real(); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = a(order[k], order[k]).real();
        out.eigenvectors.col(k) = v.col(order[k]);
    }
    return out;
}

inline double lambda_min(const HermitianMatrix& a) { return spectral_decompose(a).min(); }
inline double lambda_max(const HermitianMatrix& a) { return spectral_decompose(a).max(); }

/// Maps eigenvalues into f's domain, clamping those within kSpectrumSlack of a closed
/// endpoint; throws SpectrumOutsideDomain listing the rest.
inline RealVector checked_spectrum(const ScalarFunction& f, const RealVector& eigenvalues) {
    const Interval& dom = f.domain();
    RealVector out = eigenvalues;
    std::string offending;
    for (Index i = 0; i < out.size(); ++i) {
        double& t = out(i);
        if (dom.contains(t)) continue;
        if (dom.lo_closed && t < dom.lo && t >= dom.lo - kSpectrumSlack) {
            t = dom.lo;
            continue;
        }
        if (dom.hi_closed && t > dom.hi && t <= dom.hi + kSpectrumSlack) {
            t = dom.hi;
            continue;
        }
        offending += (offending.empty() ? "" : ", ") + detail::to_text(t);
    }
    if (!offending.empty())
        throw SpectrumOutsideDomain("eigenvalues {" + offending + "} outside domain " + dom.to_string() + " of " +
                                    f.spec());
    return out;
}

/// Functional calculus with an arbitrary real map g (no domain check).
template <class Fn>
    requires(!std::is_same_v<std::remove_cvref_t<Fn>, ScalarFunction>)
HermitianMatrix calc(Fn&& g, const HermitianMatrix& a) {
    return spectral_decompose(a).rebuild(std::forward<Fn>(g));
}

/// f(A) = U f(diag lambda) U*; eigenvalues must lie in f's domain.
inline HermitianMatrix calc(const ScalarFunction& f, const HermitianMatrix& a) {
    SpectralDecomposition sd = spectral_decompose(a);
    RealVector lam = checked_spectrum(f, sd.eigenvalues);
    return sd.rebuild_with(lam.unaryExpr([&](double t) { return f.eval_raw(t); }));
}

/// f(A), f'(A) and f'(A) A from one eigendecomposition.
struct Calculus {
    HermitianMatrix value;
    HermitianMatrix derivative;
    HermitianMatrix moment;
};

inline Calculus calculus(const ScalarFunction& f, const HermitianMatrix& a) {
    SpectralDecomposition sd = spectral_decompose(a);
    RealVector lam = checked_spectrum(f, sd.eigenvalues);
    return Calculus{sd.rebuild_with(lam.unaryExpr([&](double t) { return f.eval_raw(t); })),
                    sd.rebuild_with(lam.unaryExpr([&](double t) { return f.deriv_raw(t); })),
                    sd.rebuild_with(lam.unaryExpr([&](double t) { return t * f.deriv_raw(t); }))};
}

struct OrderCheck {
    bool holds;
    double slack; // lambda_min(B - A)
};

/// A <= B in the Loewner order, within tol on the minimum eigenvalue of B - A.
inline OrderCheck loewner_leq(const HermitianMatrix& a, const HermitianMatrix& b, double tol) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("loewner_leq: dimension " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    double slack = lambda_min(b - a);
    return {slack >= -tol, slack};
}

// ---------------------------------------------------------------------------
// Random instances. Every generator takes an explicit engine or seed.

inline ComplexVector random_gaussian_vector(Index n, Rng& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector x(n);
    for (Index i = 0; i < n; ++i) {
        double re = normal(rng);
        double im = normal(rng);
        x(i) = Complex(re, im);
    }
    return x;
}

inline ComplexVector random_unit_vector(Index n, Rng& rng) {
    ComplexVector x = random_gaussian_vector(n, rng);
    while (x.norm() == 0.0) x = random_gaussian_vector(n, rng);
    return x / x.norm();
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of R removed.
inline ComplexMatrix random_unitary(Index n, Rng& rng) {
    ComplexMatrix g(n, n);
    for (Index j = 0; j < n; ++j) g.col(j) = random_gaussian_vector(n, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Index j = 0; j < n; ++j) {
        double mag = std::abs(r(j, j));
        if (mag > 0.0) q.col(j) *= r(j, j) / mag;
    }
    return q;
}

/// Q diag(u) Q* with u uniform in [lo, hi] and Q Haar.
inline HermitianMatrix random_hermitian(Index n, double lo, double hi, Rng& rng) {
    std::uniform_real_distribution<double> uni(lo, hi);
    RealVector u(n);
    for (Index i = 0; i < n; ++i) u(i) = uni(rng);
    return HermitianMatrix::diagonal(u).congruence(random_unitary(n, rng));
}

/// Random PSD matrix of random rank with unit spectral norm.
inline HermitianMatrix random_psd(Index n, Rng& rng) {
    std::uniform_int_distribution<Index> rank_dist(1, n);
    Index rank = rank_dist(rng);
    ComplexMatrix g(n, rank);
    for (Index j = 0; j < rank; ++j) g.col(j) = random_gaussian_vector(n, rng);
    HermitianMatrix p = HermitianMatrix::trusted(g * g.adjoint());
    double top = lambda_max(p);
    return top > 0.0 ? (1.0 / top) * p : HermitianMatrix::identity(n);
}

struct DominatedPair {
    HermitianMatrix a; // dominating
    HermitianMatrix b; // b <= a
};

/// A = Q diag(u) Q* with u in [m, M]; B = A - c P for a random positive definite P (scaled
/// by a random factor times M - m), with c the largest value in (0, 1] keeping
/// lambda_min(B) >= m. Draws where rounding leaves lambda_min(A - B) < 0 are redrawn.
inline DominatedPair random_dominated_pair(Index n, double m, double big_m, Rng& rng) {
    if (!(m > 0.0) || !(m < big_m))
        throw BadInterval("random_dominated_pair needs 0 < m < M, got m=" + detail::to_text(m) +
                          " M=" + detail::to_text(big_m));
    if (n < 1) throw BadDimensions("dimension must be positive");
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    for (;;) {
        HermitianMatrix a = random_hermitian(n, m, big_m, rng);
        // The identity floor keeps P definite, so A - B does not round below zero on a kernel.
        HermitianMatrix p = (weight_dist(rng) * (big_m - m) / 1.001) * random_psd(n, rng).shifted(1e-3);

        auto floor_ok = [&](double c) { return lambda_min(a - c * p) >= m; };
        double c = 1.0;
        if (!floor_ok(1.0)) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 60; ++it) {
                double mid = 0.5 * (lo + hi);
                (floor_ok(mid) ? lo : hi) = mid;
            }
            c = lo;
        }
        HermitianMatrix b = a - c * p;
        if (lambda_min(a - b) >= 0.0) return {std::move(a), std::move(b)};
    }
}

inline DominatedPair random_dominated_pair(Index n, double m, double big_m, std::uint64_t seed) {
    Rng rng(seed);
    return random_dominated_pair(n, m, big_m, rng);
}

} // namespace loewner
