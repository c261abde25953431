#pragma once

#include "khovcss/f2.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khovcss::homalg {

/// Increasing chain complex of F2 spaces with explicit differentials.
/// diffs[i] maps degree (min_degree+i) to (min_degree+i+1); its column count
/// is dims[i] and row count dims[i+1].
struct ChainComplex {
    int min_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<f2::BitMatrix> diffs;

    int max_degree() const { return min_degree + int(dims.size()) - 1; }
    std::size_t dim_at(int deg) const {
        int i = deg - min_degree;
        return (i >= 0 && i < int(dims.size())) ? dims[std::size_t(i)] : 0;
    }
    /// Differential out of `deg`; zero-shaped matrix outside the support.
    f2::BitMatrix diff_at(int deg) const;

    /// Shape consistency and d^2 = 0; throws IntegrityError.
    void check_integrity() const;
    bool d_squared_zero() const;
};

struct HomologySummary {
    int min_degree = 0;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;    // rank of the outgoing differential
    std::vector<std::size_t> homology; // dim ker - dim im
    long long euler_chain = 0;
    long long euler_homology = 0;

    std::size_t homology_at(int deg) const {
        int i = deg - min_degree;
        return (i >= 0 && i < int(homology.size())) ? homology[std::size_t(i)] : 0;
    }
    std::size_t total_homology() const;
    std::string to_json() const;
};

/// Requires d^2 = 0 (checked). Over F2 cohomology dimensions coincide.
HomologySummary homology_dims(const ChainComplex& c);

/// Graded tensor product; basis of degree i is ordered by (degree of the
/// first factor ascending, first index, second index).
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);

/// Degreewise maps of a chain map f : c1 -> c2 (degree preserving).
/// maps[i] sends c1 degree (c1.min_degree+i); missing/empty degrees use
/// zero-shaped matrices.
struct ChainMap {
    std::vector<f2::BitMatrix> maps;
};

/// Mapping cone: degree i is C1^i (+) C2^{i-1}, basis C1 block first.
/// Throws PreconditionError unless f commutes with the differentials.
ChainComplex cone(const ChainComplex& c1, const ChainComplex& c2, const ChainMap& f);

/// Dual complex, stored increasingly via i -> (max_degree - i); every
/// differential is transposed.
ChainComplex dual(const ChainComplex& c);

/// Rank of the map induced by f on degree-n homology.
std::size_t induced_homology_rank(const ChainComplex& c1, const ChainComplex& c2,
                                  const ChainMap& f, int n);

/// Per-degree check of dim H^n(cone) = dim ker(f*_n) + dim coker(f*_{n-1}).
bool cone_rank_consistent(const ChainComplex& c1, const ChainComplex& c2, const ChainMap& f);

/// Minimum weight of a degree-i cycle not homologous to zero; the Z-side
/// distance of the slice at i. Infinite when H^i = 0.
f2::MinWeightResult min_homology_weight(const ChainComplex& c, int degree,
                                        const f2::MinWeightOptions& opts = {});

} // namespace khovcss::homalg
