#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "pdakit/pda.hpp"

namespace pdakit {

/// The four parametric PDA families.
///
///  - General:     rows (a, eps) with a in Z_q^m, eps in [0,w)^t; columns
///                 (b, delta) with b in Z_q^t and delta a t-subset of [0,m).
///  - Special:     General with t = 1 plus a block of q "sum" columns.
///  - ExtGeneral:  rows a in Z_q^m; eps moves into the column index.
///  - ExtSpecial:  ExtGeneral with t = 1 plus the sum block.
///
/// Here w = floor((q-1)/(q-z)) is the replication factor.
enum class Family { General, Special, ExtGeneral, ExtSpecial };

std::string_view family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

struct ConstructionParams {
  std::uint32_t q = 2;  // modulus
  std::uint32_t z = 1;  // cached residues per coordinate, 1 <= z < q
  std::uint32_t m = 2;  // row vector length
  std::uint32_t t = 1;  // subset size; fixed to 1 for the special families

  /// floor((q-1)/(q-z)); requires z < q.
  std::uint32_t replication() const { return (q - 1) / (q - z); }
};

struct BuildOptions {
  /// Builders refuse (CapacityError) to materialize more cells than this.
  std::uint64_t max_cells = 10'000'000;
};

/// Throws DomainError naming the violated constraint.
void check_domain(Family family, const ConstructionParams& p);

PdaArray construct_general(const ConstructionParams& p, const BuildOptions& options = {});
PdaArray construct_special(const ConstructionParams& p, const BuildOptions& options = {});
PdaArray construct_ext_general(const ConstructionParams& p, const BuildOptions& options = {});
PdaArray construct_ext_special(const ConstructionParams& p, const BuildOptions& options = {});
PdaArray construct(Family family, const ConstructionParams& p, const BuildOptions& options = {});

/// The MN array: rows are the subset_size-subsets of the users in
/// lexicographic order; cell (T, k) is a star when k is in T and otherwise
/// the symbol of the (subset_size + 1)-subset T + {k}.
PdaArray construct_mn(std::uint32_t users, std::uint32_t subset_size,
                      const BuildOptions& options = {});

/// Closed-form (K, F, Z, S) of a family, exact for any size.
PdaParams theorem_params(Family family, const ConstructionParams& p);
PdaParams mn_params(std::uint32_t users, std::uint32_t subset_size);

}  // namespace pdakit
