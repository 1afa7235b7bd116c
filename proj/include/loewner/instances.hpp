#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "loewner/hermitian.hpp"
#include "loewner/maps.hpp"
#include "loewner/scalarfn.hpp"

namespace loewner {

/// A bounded closed interval inside `dom` to draw spectra from. Open ends are pulled
/// inward by min(0.25, width/10); infinite ends are replaced by a window of width 3-4.
inline Interval sample_interval(const Interval& dom) {
    const bool lo_fin = std::isfinite(dom.lo);
    const bool hi_fin = std::isfinite(dom.hi);
    const double width = (lo_fin && hi_fin) ? dom.hi - dom.lo : kInf;
    const double margin = std::min(0.25, 0.1 * width);
    double lo, hi;
    if (lo_fin)
        lo = dom.lo_closed ? dom.lo : dom.lo + margin;
    else
        lo = hi_fin ? dom.hi - 4.0 : -2.0;
    if (hi_fin)
        hi = dom.hi_closed ? dom.hi : dom.hi - margin;
    else
        hi = lo_fin ? lo + 3.0 : 2.0;
    return Interval::closed(lo, hi);
}

/// Random pair (a, b) with b <= a, spectra inside [lo, hi]; any sign of lo is allowed.
inline DominatedPair random_dominated_pair_in(Index n, double lo, double hi, Rng& rng) {
    DominatedPair p = random_dominated_pair(n, 1.0, 1.0 + (hi - lo), rng);
    return {p.a.shifted(lo - 1.0), p.b.shifted(lo - 1.0)};
}

inline std::vector<HermitianMatrix> random_operands(std::size_t count, Index n, const Interval& iv, Rng& rng) {
    std::vector<HermitianMatrix> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_hermitian(n, iv.lo, iv.hi, rng));
    return out;
}

/// The function families exercised by property suites.
inline std::vector<ScalarFunction> standard_functions() {
    return {ScalarFunction::power(2.0),      ScalarFunction::power(3.0),   ScalarFunction::power(1.5),
            ScalarFunction::power(1.0),      ScalarFunction::power(-1.0),  ScalarFunction::power(0.0),
            ScalarFunction::exp(),           ScalarFunction::neglog(),     ScalarFunction::affine(2.0, -1.0),
            ScalarFunction::affine(-1.0, 0.5)};
}

/// A unital family with output dimension k: random conjugations, or for a single map with
/// n == k sometimes a pinching or the diagonal map.
inline MapFamily random_family(Index count, Index n, Index k, Rng& rng) {
    if (count == 1 && n == k) {
        std::uniform_int_distribution<int> pick(0, 3);
        int which = pick(rng);
        if (which == 1) return MapFamily({PositiveLinearMap::diagonal(n)});
        if (which == 2) {
            std::vector<std::vector<Index>> blocks(2);
            for (Index i = 0; i < n; ++i) blocks[static_cast<std::size_t>(i % 2)].push_back(i);
            if (blocks[1].empty()) blocks.pop_back();
            return MapFamily({PositiveLinearMap::pinch(n, blocks)});
        }
    }
    return random_unital_family(count, n, k, rng);
}

} // namespace loewner
