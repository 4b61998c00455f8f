#include "heatctl/fem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

#include "heatctl/errors.hpp"

namespace heatctl {

namespace {

double area_of(const std::array<Point, 3>& p) {
  return 0.5 * ((p[1].x - p[0].x) * (p[2].y - p[0].y) - (p[2].x - p[0].x) * (p[1].y - p[0].y));
}

template <typename ElementFn>
SymmetricSparseMatrix assemble_cells(const Mesh& mesh, ElementFn&& element) {
  std::vector<Triplet> t;
  t.reserve(9 * mesh.num_triangles());
  for (Index c = 0; c < mesh.num_triangles(); ++c) {
    const auto& tri = mesh.triangles()[c];
    const ElementMatrix3 local = element(mesh.triangle_points(c));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) t.push_back({tri[i], tri[j], local[i][j]});
    }
  }
  return SymmetricSparseMatrix::from_triplets(mesh.num_vertices(), std::move(t));
}

}  // namespace

ElementMatrix3 p1_stiffness_element(const std::array<Point, 3>& p) {
  const double area = area_of(p);
  std::array<double, 3> b{}, c{};
  for (int i = 0; i < 3; ++i) {
    const Point& pj = p[(i + 1) % 3];
    const Point& pk = p[(i + 2) % 3];
    b[i] = pj.y - pk.y;
    c[i] = pk.x - pj.x;
  }
  ElementMatrix3 k{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) k[i][j] = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
  }
  return k;
}

ElementMatrix3 p1_mass_element(const std::array<Point, 3>& p) {
  const double s = area_of(p) / 12.0;
  ElementMatrix3 m{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = (i == j ? 2.0 : 1.0) * s;
  }
  return m;
}

std::array<std::array<double, 2>, 2> p1_edge_mass_element(double h) {
  return {{{h / 3.0, h / 6.0}, {h / 6.0, h / 3.0}}};
}

SymmetricSparseMatrix assemble_stiffness(const Mesh& mesh) {
  return assemble_cells(mesh, p1_stiffness_element);
}

SymmetricSparseMatrix assemble_domain_mass(const Mesh& mesh) {
  return assemble_cells(mesh, p1_mass_element);
}

SymmetricSparseMatrix assemble_boundary_mass(const Mesh& mesh, BoundaryTag tag) {
  std::vector<Triplet> t;
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag != tag) continue;
    const auto m = p1_edge_mass_element(mesh.edge_length(e));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) t.push_back({e.vertices[i], e.vertices[j], m[i][j]});
    }
  }
  return SymmetricSparseMatrix::from_triplets(mesh.num_vertices(), std::move(t));
}

Vector interpolate(const Mesh& mesh, const std::function<double(Point)>& f) {
  Vector out;
  out.reserve(mesh.num_vertices());
  for (const Point& p : mesh.vertices()) out.push_back(f(p));
  return out;
}

TraceSpace::TraceSpace(const Mesh& mesh, BoundaryTag tag) {
  std::map<std::pair<Side, Index>, Index> dof_of;
  auto dof = [&](Side s, Index v) {
    auto [it, inserted] = dof_of.try_emplace({s, v}, vertex_of_.size());
    if (inserted) {
      vertex_of_.push_back(v);
      side_of_.push_back(s);
    }
    return it->second;
  };

  std::vector<Triplet> t;
  for (const auto& e : mesh.boundary_edges()) {
    if (e.tag != tag) continue;
    const std::array<Index, 2> d{dof(e.side, e.vertices[0]), dof(e.side, e.vertices[1])};
    const auto m = p1_edge_mass_element(mesh.edge_length(e));
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) t.push_back({d[i], d[j], m[i][j]});
    }
  }
  mass_ = SymmetricSparseMatrix::from_triplets(vertex_of_.size(), std::move(t));
  lumped_ = mass_.row_sums();
}

Vector TraceSpace::trace(std::span<const double> nodal) const {
  Vector out(size());
  for (Index d = 0; d < size(); ++d) out[d] = nodal[vertex_of_[d]];
  return out;
}

Vector TraceSpace::spread(std::span<const double> values, Index num_vertices) const {
  if (values.size() != size()) throw std::invalid_argument("trace field has wrong size");
  Vector out(num_vertices, 0.0);
  for (Index d = 0; d < size(); ++d) out[vertex_of_[d]] += values[d];
  return out;
}

Vector TraceSpace::interpolate(const Mesh& mesh,
                               const std::function<double(Point, Side)>& f) const {
  Vector out(size());
  for (Index d = 0; d < size(); ++d) out[d] = f(mesh.vertex(vertex_of_[d]), side_of_[d]);
  return out;
}

FemOperators::FemOperators(Mesh m)
    : mesh(std::move(m)),
      stiffness(assemble_stiffness(mesh)),
      domain_mass(assemble_domain_mass(mesh)),
      gamma1_mass(assemble_boundary_mass(mesh, BoundaryTag::Gamma1)),
      gamma2_mass(assemble_boundary_mass(mesh, BoundaryTag::Gamma2)),
      v_gram(SymmetricSparseMatrix::combine(1.0, stiffness, 1.0, domain_mass)),
      trace(mesh, BoundaryTag::Gamma2),
      gamma1_vertices(mesh.tagged_vertices(BoundaryTag::Gamma1)) {
  if (gamma1_vertices.empty() || trace.size() == 0) {
    throw MeasureZeroViolation("both Gamma1 and Gamma2 must be nonempty");
  }
}

Vector FemOperators::load(std::span<const double> g, std::span<const double> q,
                          std::optional<RobinData> robin) const {
  const Index nv = mesh.num_vertices();
  if (g.size() != nv) throw ValidationError("distributed control has wrong size");
  if (q.size() != trace.size()) throw ValidationError("boundary control has wrong size");

  Vector f = domain_mass * g;
  const Vector flux = trace.spread(trace.mass() * q, nv);
  axpy(-1.0, flux, f);
  if (robin) {
    if (robin->b.size() != nv) throw ValidationError("Robin datum has wrong size");
    axpy(robin->alpha, gamma1_mass * robin->b, f);
  }
  return f;
}

Vector assemble_load(const Mesh& mesh, std::span<const double> g, std::span<const double> q,
                     std::optional<RobinData> robin) {
  return FemOperators(mesh).load(g, q, robin);
}

DirichletReduction::DirichletReduction(const SymmetricSparseMatrix& full, std::vector<Index> fixed)
    : full_(full), fixed_(std::move(fixed)) {
  std::sort(fixed_.begin(), fixed_.end());
  fixed_.erase(std::unique(fixed_.begin(), fixed_.end()), fixed_.end());
  Index k = 0;
  for (Index v = 0; v < full.dimension(); ++v) {
    if (k < fixed_.size() && fixed_[k] == v) {
      ++k;
    } else {
      free_.push_back(v);
    }
  }
  reduced_ = full.principal_submatrix(free_);
}

Vector DirichletReduction::reduce_rhs(std::span<const double> load,
                                      std::span<const double> lifting) const {
  Vector r(load.begin(), load.end());
  axpy(-1.0, full_ * lifting, r);
  return restrict(r);
}

Vector DirichletReduction::restrict(std::span<const double> full) const {
  Vector out(free_.size());
  for (Index i = 0; i < free_.size(); ++i) out[i] = full[free_[i]];
  return out;
}

Vector DirichletReduction::expand(std::span<const double> reduced,
                                  std::span<const double> lifting) const {
  Vector out(lifting.begin(), lifting.end());
  for (Index i = 0; i < free_.size(); ++i) out[free_[i]] = reduced[i];
  return out;
}

Vector ReducedSystem::expand(std::span<const double> reduced_solution) const {
  Vector out = lifting;
  for (Index i = 0; i < free_vertices.size(); ++i) out[free_vertices[i]] = reduced_solution[i];
  return out;
}

ReducedSystem apply_dirichlet(const SymmetricSparseMatrix& stiffness, std::span<const double> load,
                              const Mesh& mesh, std::span<const double> b) {
  const auto fixed = mesh.tagged_vertices(BoundaryTag::Gamma1);
  if (fixed.empty()) throw MeasureZeroViolation("no Gamma1 vertices to constrain");
  Vector lifting(mesh.num_vertices(), 0.0);
  for (Index v : fixed) lifting[v] = b[v];

  DirichletReduction reduction(stiffness, fixed);
  return {reduction.reduced_matrix(), reduction.reduce_rhs(load, lifting), std::move(lifting),
          std::vector<Index>(reduction.free_vertices().begin(), reduction.free_vertices().end())};
}

}  // namespace heatctl
