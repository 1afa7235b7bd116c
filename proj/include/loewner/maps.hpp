#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "loewner/hermitian.hpp"

namespace loewner {

/// Phi(X) = V* X V with V an n x k matrix.
struct Conjugation {
    ComplexMatrix v;
};

/// Keeps the diagonal blocks given by a partition of {0..n-1}, zeroes the rest.
struct Pinch {
    Index dim;
    std::vector<std::vector<Index>> blocks;
};

/// X -> diag(X).
struct DiagonalPart {
    Index dim;
};

class PositiveLinearMap {
public:
    using Variant = std::variant<Conjugation, Pinch, DiagonalPart>;

    static PositiveLinearMap conjugation(ComplexMatrix v) {
        if (v.rows() < 1 || v.cols() < 1) throw BadDimensions("conjugation needs a non-empty V");
        return PositiveLinearMap(Conjugation{std::move(v)});
    }

    static PositiveLinearMap pinch(Index n, std::vector<std::vector<Index>> blocks) {
        std::vector<int> seen(static_cast<std::size_t>(n), 0);
        for (const auto& block : blocks)
            for (Index i : block) {
                if (i < 0 || i >= n) throw BadDimensions("pinch index " + std::to_string(i) + " out of range");
                ++seen[static_cast<std::size_t>(i)];
            }
        for (int s : seen)
            if (s != 1) throw BadDimensions("pinch blocks must partition {0.." + std::to_string(n - 1) + "}");
        return PositiveLinearMap(Pinch{n, std::move(blocks)});
    }

    static PositiveLinearMap diagonal(Index n) {
        if (n < 1) throw BadDimensions("diag map needs a positive dimension");
        return PositiveLinearMap(DiagonalPart{n});
    }

    const Variant& variant() const { return v_; }

    std::string variant_name() const {
        return std::visit(
            [](const auto& m) -> std::string {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Conjugation>) return "conjugation";
                else if constexpr (std::is_same_v<T, Pinch>) return "pinch";
                else return "diag";
            },
            v_);
    }

    Index input_dim() const {
        return std::visit(
            [](const auto& m) -> Index {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Conjugation>) return m.v.rows();
                else return m.dim;
            },
            v_);
    }

    Index output_dim() const {
        return std::visit(
            [](const auto& m) -> Index {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Conjugation>) return m.v.cols();
                else return m.dim;
            },
            v_);
    }

    HermitianMatrix apply(const HermitianMatrix& x) const {
        if (x.dim() != input_dim())
            throw DimensionMismatch("map expects dimension " + std::to_string(input_dim()) + ", got " +
                                    std::to_string(x.dim()));
        return std::visit(
            [&](const auto& m) -> HermitianMatrix {
                using T = std::decay_t<decltype(m)>;
                if constexpr (std::is_same_v<T, Conjugation>) {
                    return x.congruence(m.v.adjoint());
                } else if constexpr (std::is_same_v<T, Pinch>) {
                    ComplexMatrix out = ComplexMatrix::Zero(m.dim, m.dim);
                    for (const auto& block : m.blocks)
                        for (Index i : block)
                            for (Index j : block) out(i, j) = x(i, j);
                    return HermitianMatrix::trusted(std::move(out));
                } else {
                    return HermitianMatrix::trusted(x.matrix().diagonal().asDiagonal());
                }
            },
            v_);
    }

    HermitianMatrix operator()(const HermitianMatrix& x) const { return apply(x); }

private:
    explicit PositiveLinearMap(Variant v) : v_(std::move(v)) {}
    Variant v_;
};

inline HermitianMatrix apply(const PositiveLinearMap& phi, const HermitianMatrix& x) { return phi.apply(x); }

/// Positive maps Phi_i sharing one output dimension k.
class MapFamily {
public:
    explicit MapFamily(std::vector<PositiveLinearMap> maps) : maps_(std::move(maps)) {
        if (maps_.empty()) throw BadDimensions("map family is empty");
        for (const auto& m : maps_)
            if (m.output_dim() != maps_.front().output_dim())
                throw DimensionMismatch("maps in a family must share the output dimension");
    }

    static MapFamily identity(Index n) {
        return MapFamily({PositiveLinearMap::conjugation(ComplexMatrix::Identity(n, n))});
    }

    std::size_t size() const { return maps_.size(); }
    const PositiveLinearMap& operator[](std::size_t i) const { return maps_[i]; }
    const std::vector<PositiveLinearMap>& maps() const { return maps_; }
    Index output_dim() const { return maps_.front().output_dim(); }

    /// sum_i Phi_i(X_i)
    HermitianMatrix apply_sum(const std::vector<HermitianMatrix>& xs) const {
        if (xs.size() != maps_.size())
            throw DimensionMismatch("family has " + std::to_string(maps_.size()) + " maps but " +
                                    std::to_string(xs.size()) + " operands were given");
        HermitianMatrix total = HermitianMatrix::zero(output_dim());
        for (std::size_t i = 0; i < maps_.size(); ++i) total += maps_[i].apply(xs[i]);
        return total;
    }

    /// sum_i Phi_i(g(X_i))
    template <class Fn>
    HermitianMatrix apply_sum(const std::vector<HermitianMatrix>& xs, Fn&& g) const {
        std::vector<HermitianMatrix> mapped;
        mapped.reserve(xs.size());
        for (const auto& x : xs) mapped.push_back(g(x));
        return apply_sum(mapped);
    }

private:
    std::vector<PositiveLinearMap> maps_;
};

inline constexpr double kUnitalTol = 1e-10;

struct UnitalCheck {
    bool unital;
    double defect; // || sum_i Phi_i(I) - I ||_F
};

inline UnitalCheck check_unital_family(const MapFamily& family) {
    HermitianMatrix total = HermitianMatrix::zero(family.output_dim());
    for (const auto& m : family.maps()) total += m.apply(HermitianMatrix::identity(m.input_dim()));
    double defect = (total - HermitianMatrix::identity(family.output_dim())).frobenius_norm();
    return {defect <= kUnitalTol, defect};
}

/// `count` conjugation maps V_i (n x k) cut as vertical blocks from the first k columns of a
/// Haar unitary of size count*n, so that sum_i V_i* V_i = I_k.
inline MapFamily random_unital_family(Index count, Index n, Index k, Rng& rng) {
    if (count < 1 || n < 1 || k < 1 || count * n < k)
        throw BadDimensions("random_unital_family needs count*n >= k >= 1 (count=" + std::to_string(count) +
                            ", n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
    ComplexMatrix w = random_unitary(count * n, rng);
    std::vector<PositiveLinearMap> maps;
    for (Index i = 0; i < count; ++i) maps.push_back(PositiveLinearMap::conjugation(w.block(i * n, 0, n, k)));
    return MapFamily(std::move(maps));
}

inline MapFamily random_unital_family(Index count, Index n, Index k, std::uint64_t seed) {
    Rng rng(seed);
    return random_unital_family(count, n, k, rng);
}

} // namespace loewner
