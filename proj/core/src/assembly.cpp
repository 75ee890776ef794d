#include "sdgfdm/assembly.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "sdgfdm/error.hpp"

namespace sdgfdm {

std::string_view to_string(Field f) {
  switch (f) {
    case Field::U1: return "u1";
    case Field::U2: return "u2";
    case Field::P: return "p";
    case Field::Phi: return "phi";
  }
  return "unknown";
}

UnknownMap::UnknownMap(const NodeSet& cloud)
    : fluid_(cloud.counts().side_total(Side::Fluid)),
      porous_(cloud.counts().side_total(Side::Porous)) {}

std::size_t UnknownMap::column(std::size_t node, Field f) const {
  const bool fluid = node < fluid_;
  if (node >= fluid_ + porous_ || fluid == (f == Field::Phi)) {
    throw Error(ErrorCode::InvalidArgument, "node " + std::to_string(node) + " carries no " +
                                                std::string(to_string(f)) + " unknown");
  }
  switch (f) {
    case Field::U1: return node;
    case Field::U2: return fluid_ + node;
    case Field::P: return 2 * fluid_ + node;
    case Field::Phi: return 2 * fluid_ + node;  // node >= fluid_
  }
  return 0;
}

std::pair<std::size_t, Field> UnknownMap::unknown(std::size_t col) const {
  if (col >= size()) throw Error(ErrorCode::InvalidArgument, "column out of range");
  if (col < fluid_) return {col, Field::U1};
  if (col < 2 * fluid_) return {col - fluid_, Field::U2};
  if (col < 3 * fluid_) return {col - 2 * fluid_, Field::P};
  return {col - 2 * fluid_, Field::Phi};
}

namespace {

using Row = DerivativeBasis::Row;

class Builder {
 public:
  Builder(const NodeSet& cloud, const StencilSet& st, const ProblemSpec& spec,
          const AssemblyOptions& opt)
      : cloud_(cloud), st_(st), spec_(spec), opt_(opt), map_(cloud), rhs_(map_.size()) {
    triplets_.reserve(map_.size() * (st.stars.empty() ? 1 : 3 * (st.stars[0].neighbors.size() + 1)));
  }

  CoupledSystem build() {
    for (const Node& n : cloud_.nodes()) {
      if (n.side == Side::Fluid) {
        fluid_rows(n);
      } else {
        porous_rows(n);
      }
    }
    Eigen::SparseMatrix<double> a(static_cast<Eigen::Index>(map_.size()),
                                  static_cast<Eigen::Index>(map_.size()));
    a.setFromTriplets(triplets_.begin(), triplets_.end());
    a.makeCompressed();
    return {std::move(a), std::move(rhs_), map_};
  }

 private:
  void add(std::size_t row, std::size_t col, double v) {
    if (v == 0.0) return;
    triplets_.emplace_back(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col), v);
  }

  // Adds sum_j coef(E(r, j)) * field(star node j) for each listed stencil row.
  template <typename Fn>
  void add_stencil(std::size_t row, std::size_t node, Field f, Fn&& coef) {
    const Star& star = st_.stars[node];
    const auto& e = st_.coefficients[node].e;
    for (std::size_t j = 0; j < e.cols(); ++j) {
      const std::size_t k = j == 0 ? node : star.neighbors[j - 1];
      add(row, map_.column(k, f), coef(e, j));
    }
  }

  std::size_t partner_of(const Node& n) const {
    if (!n.partner || *n.partner >= cloud_.size()) {
      throw Error(ErrorCode::UnmatchedInterfaceNode,
                  "interface node " + std::to_string(n.index) + " has no partner");
    }
    const Node& q = cloud_[*n.partner];
    if (q.side == n.side || q.kind != NodeKind::Interface || q.partner != n.index) {
      throw Error(ErrorCode::UnmatchedInterfaceNode,
                  "interface node " + std::to_string(n.index) + " has an invalid partner");
    }
    return q.index;
  }

  void closure_row(const Node& n) {
    const std::size_t r = map_.column(n.index, Field::P);
    add_stencil(r, n.index, Field::U1, [](const DenseMatrix& e, std::size_t j) { return e(Row::X, j); });
    add_stencil(r, n.index, Field::U2, [](const DenseMatrix& e, std::size_t j) { return e(Row::Y, j); });
    add(r, r, 1.0);
    rhs_[static_cast<Eigen::Index>(r)] = pressure_closure_operator(spec_, n.position);
  }

  void fluid_rows(const Node& n) {
    const double nu = spec_.coeffs.nu;
    const std::size_t i = n.index;
    const std::size_t r1 = map_.column(i, Field::U1);
    const std::size_t r2 = map_.column(i, Field::U2);
    const std::size_t r3 = map_.column(i, Field::P);
    switch (n.kind) {
      case NodeKind::Interior: {
        const Vec2 f = spec_.fluid_forcing(n.position);
        add_stencil(r1, i, Field::U1, [nu](const DenseMatrix& e, std::size_t j) {
          return -2.0 * nu * e(Row::XX, j) - nu * e(Row::YY, j);
        });
        add_stencil(r1, i, Field::U2, [nu](const DenseMatrix& e, std::size_t j) { return -nu * e(Row::XY, j); });
        add_stencil(r1, i, Field::P, [](const DenseMatrix& e, std::size_t j) { return e(Row::X, j); });
        rhs_[static_cast<Eigen::Index>(r1)] = f.x;

        add_stencil(r2, i, Field::U1, [nu](const DenseMatrix& e, std::size_t j) { return -nu * e(Row::XY, j); });
        add_stencil(r2, i, Field::U2, [nu](const DenseMatrix& e, std::size_t j) {
          return -nu * e(Row::XX, j) - 2.0 * nu * e(Row::YY, j);
        });
        add_stencil(r2, i, Field::P, [](const DenseMatrix& e, std::size_t j) { return e(Row::Y, j); });
        rhs_[static_cast<Eigen::Index>(r2)] = f.y;

        add_stencil(r3, i, Field::P, [](const DenseMatrix& e, std::size_t j) {
          return e(Row::XX, j) + e(Row::YY, j);
        });
        if (opt_.divergence_augmented_pressure) {
          add_stencil(r3, i, Field::U1, [](const DenseMatrix& e, std::size_t j) { return e(Row::X, j); });
          add_stencil(r3, i, Field::U2, [](const DenseMatrix& e, std::size_t j) { return e(Row::Y, j); });
        }
        rhs_[static_cast<Eigen::Index>(r3)] = divergence_of_forcing(spec_, n.position);
        break;
      }
      case NodeKind::Boundary: {
        add(r1, r1, 1.0);
        rhs_[static_cast<Eigen::Index>(r1)] = spec_.exact.u1.value(n.position);
        add(r2, r2, 1.0);
        rhs_[static_cast<Eigen::Index>(r2)] = spec_.exact.u2.value(n.position);
        closure_row(n);
        break;
      }
      case NodeKind::Interface: {
        const std::size_t q = partner_of(n);
        const Vec2 nf = n.normal;
        const Vec2 np = cloud_[q].normal;
        const Vec2 t = n.tangent;
        const double kappa = spec_.coeffs.kappa;
        const double beta = spec_.coeffs.beta_bjs;

        // Mass conservation: u . n_f - K grad(phi) . n_p = 0, phi from the porous twin.
        add(r1, r1, nf.x);
        add(r1, map_.column(i, Field::U2), nf.y);
        add_stencil(r1, q, Field::Phi, [&](const DenseMatrix& e, std::size_t j) {
          return -kappa * (e(Row::X, j) * np.x + e(Row::Y, j) * np.y);
        });
        rhs_[static_cast<Eigen::Index>(r1)] = mass_conservation_operator(spec_, n.position, nf);

        // Tangential stress with BJS friction.
        add_stencil(r2, i, Field::U1, [&](const DenseMatrix& e, std::size_t j) {
          return -2.0 * nu * e(Row::X, j) * nf.x * t.x - nu * e(Row::Y, j) * nf.x * t.y -
                 nu * e(Row::Y, j) * nf.y * t.x;
        });
        add_stencil(r2, i, Field::U2, [&](const DenseMatrix& e, std::size_t j) {
          return -nu * e(Row::X, j) * nf.y * t.x - nu * e(Row::X, j) * nf.x * t.y -
                 2.0 * nu * e(Row::Y, j) * nf.y * t.y;
        });
        add(r2, map_.column(i, Field::U1), -beta * t.x);
        add(r2, r2, -beta * t.y);
        rhs_[static_cast<Eigen::Index>(r2)] = tangential_stress_operator(spec_, n.position, nf, t);

        closure_row(n);
        break;
      }
    }
  }

  void porous_rows(const Node& n) {
    const std::size_t i = n.index;
    const std::size_t r = map_.column(i, Field::Phi);
    switch (n.kind) {
      case NodeKind::Interior: {
        const double kappa = spec_.coeffs.kappa;
        add_stencil(r, i, Field::Phi, [kappa](const DenseMatrix& e, std::size_t j) {
          return -kappa * e(Row::XX, j) - kappa * e(Row::YY, j);
        });
        rhs_[static_cast<Eigen::Index>(r)] = spec_.porous_forcing(n.position);
        break;
      }
      case NodeKind::Boundary:
        add(r, r, 1.0);
        rhs_[static_cast<Eigen::Index>(r)] = spec_.exact.phi.value(n.position);
        break;
      case NodeKind::Interface: {
        // Normal stress balance, velocity derivatives from the fluid twin.
        const std::size_t f = partner_of(n);
        const Vec2 nf = cloud_[f].normal;
        const double nu = spec_.coeffs.nu;
        add(r, map_.column(f, Field::P), 1.0);
        add_stencil(r, f, Field::U1, [&](const DenseMatrix& e, std::size_t j) {
          return -2.0 * nu * (e(Row::X, j) * nf.x * nf.x + e(Row::Y, j) * nf.x * nf.y);
        });
        add_stencil(r, f, Field::U2, [&](const DenseMatrix& e, std::size_t j) {
          return -2.0 * nu * (e(Row::X, j) * nf.x * nf.y + e(Row::Y, j) * nf.y * nf.y);
        });
        add(r, r, -spec_.coeffs.g);
        rhs_[static_cast<Eigen::Index>(r)] = normal_stress_operator(spec_, n.position, nf);
        break;
      }
    }
  }

  const NodeSet& cloud_;
  const StencilSet& st_;
  const ProblemSpec& spec_;
  const AssemblyOptions& opt_;
  UnknownMap map_;
  Eigen::VectorXd rhs_;
  std::vector<Eigen::Triplet<double>> triplets_;
};

}  // namespace

CoupledSystem assemble(const NodeSet& cloud, const StencilSet& stencils, const ProblemSpec& spec,
                       const AssemblyOptions& options) {
  if (stencils.size() != cloud.size() || stencils.coefficients.size() != cloud.size()) {
    throw Error(ErrorCode::MissingStencil, "have " + std::to_string(stencils.size()) +
                                               " stencils for " + std::to_string(cloud.size()) +
                                               " nodes");
  }
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    if (stencils.stars[i].center != i || stencils.coefficients[i].rows() < 5) {
      throw Error(ErrorCode::MissingStencil, "no stencil for node " + std::to_string(i));
    }
  }
  return Builder(cloud, stencils, spec, options).build();
}

Eigen::VectorXd exact_unknowns(const NodeSet& cloud, const ProblemSpec& spec) {
  const UnknownMap map(cloud);
  Eigen::VectorXd x(static_cast<Eigen::Index>(map.size()));
  for (const Node& n : cloud.nodes()) {
    const Vec2 p = n.position;
    if (n.side == Side::Fluid) {
      x[static_cast<Eigen::Index>(map.column(n.index, Field::U1))] = spec.exact.u1.value(p);
      x[static_cast<Eigen::Index>(map.column(n.index, Field::U2))] = spec.exact.u2.value(p);
      x[static_cast<Eigen::Index>(map.column(n.index, Field::P))] = spec.exact.p.value(p);
    } else {
      x[static_cast<Eigen::Index>(map.column(n.index, Field::Phi))] = spec.exact.phi.value(p);
    }
  }
  return x;
}

void write_system(std::ostream& matrix_out, std::ostream& rhs_out, const CoupledSystem& system) {
  matrix_out.precision(17);
  rhs_out.precision(17);
  const auto& a = system.matrix;
  for (Eigen::Index c = 0; c < a.outerSize(); ++c) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(a, c); it; ++it) {
      matrix_out << it.row() << ' ' << it.col() << ' ' << it.value() << '\n';
    }
  }
  for (Eigen::Index i = 0; i < system.rhs.size(); ++i) rhs_out << system.rhs[i] << '\n';
}

}  // namespace sdgfdm
