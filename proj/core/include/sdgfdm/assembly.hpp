#pragma once

#include <cstddef>
#include <iosfwd>
#include <string_view>
#include <utility>

#include <Eigen/Sparse>

#include "sdgfdm/pointcloud.hpp"
#include "sdgfdm/problem.hpp"
#include "sdgfdm/stencil.hpp"

namespace sdgfdm {

enum class Field { U1, U2, P, Phi };

std::string_view to_string(Field f);

// (node, field) -> column. Fluid nodes carry u1, u2, p in three consecutive
// blocks, porous nodes carry phi in a fourth; inside every block nodes appear
// as boundary, interface, interior (the NodeSet order).
class UnknownMap {
 public:
  UnknownMap() = default;
  explicit UnknownMap(const NodeSet& cloud);

  std::size_t column(std::size_t node, Field f) const;
  std::pair<std::size_t, Field> unknown(std::size_t column) const;
  std::size_t size() const { return 3 * fluid_ + porous_; }
  std::size_t fluid_count() const { return fluid_; }
  std::size_t porous_count() const { return porous_; }

 private:
  std::size_t fluid_ = 0;
  std::size_t porous_ = 0;
};

struct CoupledSystem {
  Eigen::SparseMatrix<double> matrix;
  Eigen::VectorXd rhs;
  UnknownMap map;
};

struct AssemblyOptions {
  // Adds du1/dx + du2/dy to interior pressure-Poisson rows.
  bool divergence_augmented_pressure = false;
};

CoupledSystem assemble(const NodeSet& cloud, const StencilSet& stencils, const ProblemSpec& spec,
                       const AssemblyOptions& options = {});

/// Nodal samples of the exact solution laid out by the unknown map.
Eigen::VectorXd exact_unknowns(const NodeSet& cloud, const ProblemSpec& spec);

/// Coordinate text "row col value" (0-based) and one rhs value per line.
void write_system(std::ostream& matrix_out, std::ostream& rhs_out, const CoupledSystem& system);

}  // namespace sdgfdm
