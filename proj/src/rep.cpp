#include "clusterforge/rep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace clusterforge {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v - 1); }

std::size_t path_index(const std::vector<Path>& basis, const std::vector<std::size_t>& arrows) {
  auto it = std::lower_bound(basis.begin(), basis.end(), arrows,
                             [](const Path& p, const std::vector<std::size_t>& a) { return p.arrows < a; });
  if (it == basis.end() || it->arrows != arrows) throw std::logic_error("path not in basis");
  return static_cast<std::size_t>(it - basis.begin());
}

}  // namespace

// ---------------------------------------------------------------- ZRep

ZRep::ZRep(Quiver q, std::vector<std::size_t> generators, std::vector<IntMatrix> relations,
           std::vector<IntMatrix> actions)
    : q_(std::move(q)), gens_(std::move(generators)), rels_(std::move(relations)), acts_(std::move(actions)) {
  validate(q_);
  const auto n = static_cast<std::size_t>(q_.vertex_count());
  if (gens_.size() != n) throw std::invalid_argument("generator list length does not match quiver");
  if (rels_.empty()) {
    for (std::size_t v = 0; v < n; ++v) rels_.emplace_back(gens_[v], 0);
  } else if (rels_.size() != n) {
    throw std::invalid_argument("relation list length does not match quiver");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (rels_[v].cols() == 0) rels_[v] = IntMatrix(gens_[v], 0);
    if (rels_[v].rows() != gens_[v])
      throw std::invalid_argument("relation matrix at vertex " + std::to_string(v + 1) + " has wrong row count");
  }
  if (acts_.empty()) {
    for (const auto& a : q_.arrows()) acts_.emplace_back(gens_[ix(a.target)], gens_[ix(a.source)]);
  } else if (acts_.size() != q_.arrow_count()) {
    throw std::invalid_argument("action list length does not match arrow count");
  }
  for (std::size_t a = 0; a < acts_.size(); ++a) {
    const auto& arr = q_.arrow(a);
    const std::size_t rows = gens_[ix(arr.target)], cols = gens_[ix(arr.source)];
    if (acts_[a].rows() == rows && acts_[a].cols() == cols) continue;
    // an empty literal stands for any matrix with no entries
    if (!acts_[a].empty() || (rows != 0 && cols != 0))
      throw std::invalid_argument("action matrix of arrow " + std::to_string(a + 1) + " has wrong shape");
    acts_[a] = IntMatrix(rows, cols);
  }
}

ZRep ZRep::lattice(Quiver q, std::vector<std::size_t> ranks, std::vector<IntMatrix> actions) {
  return ZRep(std::move(q), std::move(ranks), {}, std::move(actions));
}

ZRep ZRep::zero(Quiver q) {
  std::vector<std::size_t> g(static_cast<std::size_t>(q.vertex_count()), 0);
  return ZRep(std::move(q), std::move(g), {}, {});
}

bool ZRep::is_lattice() const {
  return std::all_of(rels_.begin(), rels_.end(), [](const IntMatrix& r) { return r.cols() == 0 || r.is_zero(); });
}

bool ZRep::is_zero() const {
  for (int v = 1; v <= q_.vertex_count(); ++v)
    if (!vertex_group(v).structure().is_zero()) return false;
  return true;
}

DimVector ZRep::rank_vector() const {
  DimVector d;
  for (int v = 1; v <= q_.vertex_count(); ++v)
    d.emplace_back(static_cast<unsigned long>(vertex_group(v).structure().free_rank));
  return d;
}

Presentation ZRep::vertex_group(int v) const { return Presentation{generators(v), relations(v)}; }

IntMatrix ZRep::path_action(const Path& p) const {
  IntMatrix m = IntMatrix::identity(generators(p.start));
  for (std::size_t a : p.arrows) m = acts_[a] * m;
  return m;
}

bool ZRep::descends() const {
  for (std::size_t a = 0; a < acts_.size(); ++a) {
    const auto& arr = q_.arrow(a);
    const IntMatrix& rs = relations(arr.source);
    if (rs.cols() == 0) continue;
    if (!solve(relations(arr.target), acts_[a] * rs)) return false;
  }
  return true;
}

std::string ZRep::structural_key() const {
  std::ostringstream os;
  os << q_.vertex_count() << ':';
  for (const auto& a : q_.arrows()) os << a.source << '>' << a.target << ',';
  os << '|';
  for (std::size_t v = 0; v < gens_.size(); ++v) os << gens_[v] << rels_[v].to_string() << ';';
  os << '|';
  for (const auto& m : acts_) os << m.to_string() << ';';
  return os.str();
}

// ---------------------------------------------------------------- maps

RepMap compose(const RepMap& after, const RepMap& before) {
  RepMap c;
  for (std::size_t v = 0; v < after.components.size(); ++v)
    c.components.push_back(after.components[v] * before.components[v]);
  return c;
}

RepMap identity_map(const ZRep& m) {
  RepMap id;
  for (int v = 1; v <= m.quiver().vertex_count(); ++v) id.components.push_back(IntMatrix::identity(m.generators(v)));
  return id;
}

bool is_morphism(const ZRep& m, const ZRep& n, const RepMap& f) {
  const Quiver& q = m.quiver();
  if (f.components.size() != static_cast<std::size_t>(q.vertex_count())) return false;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const IntMatrix& c = f.at(v);
    if (c.rows() != n.generators(v) || c.cols() != m.generators(v)) return false;
    if (m.relations(v).cols() > 0 && !solve(n.relations(v), c * m.relations(v))) return false;
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    IntMatrix diff = f.at(arr.target) * m.action(a) - n.action(a) * f.at(arr.source);
    if (diff.is_zero()) continue;
    if (n.relations(arr.target).cols() == 0 || !solve(n.relations(arr.target), diff)) return false;
  }
  return true;
}

// ---------------------------------------------------------------- projectives

ZRep projective(const Quiver& q, int i) {
  q.check_vertex(i);
  return projective_sum(q, {i});
}

ZRep projective_sum(const Quiver& q, const std::vector<int>& vertices) {
  validate(q);
  const int n = q.vertex_count();
  // basis at w: summand by summand, paths v_s ~> w in lexicographic order
  std::vector<std::vector<std::vector<Path>>> basis(static_cast<std::size_t>(n));
  std::vector<std::size_t> dims(static_cast<std::size_t>(n), 0);
  for (int w = 1; w <= n; ++w)
    for (int v : vertices) {
      basis[ix(w)].push_back(q.paths(v, w));
      dims[ix(w)] += basis[ix(w)].back().size();
    }
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    IntMatrix m(dims[ix(arr.target)], dims[ix(arr.source)]);
    std::size_t src_off = 0, tgt_off = 0;
    for (std::size_t s = 0; s < vertices.size(); ++s) {
      const auto& from = basis[ix(arr.source)][s];
      const auto& to = basis[ix(arr.target)][s];
      for (std::size_t k = 0; k < from.size(); ++k) {
        auto ext = from[k].arrows;
        ext.push_back(a);
        m(tgt_off + path_index(to, ext), src_off + k) = 1;
      }
      src_off += from.size();
      tgt_off += to.size();
    }
    acts.push_back(std::move(m));
  }
  return ZRep::lattice(q, dims, std::move(acts));
}

ZRep injective_lattice(const Quiver& q, int i) {
  q.check_vertex(i);
  validate(q);
  const int n = q.vertex_count();
  std::vector<std::vector<Path>> basis;
  std::vector<std::size_t> dims;
  for (int w = 1; w <= n; ++w) {
    basis.push_back(q.paths(w, i));
    dims.push_back(basis.back().size());
  }
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    IntMatrix m(dims[ix(arr.target)], dims[ix(arr.source)]);
    const auto& from = basis[ix(arr.source)];
    for (std::size_t k = 0; k < from.size(); ++k) {
      const auto& p = from[k].arrows;
      if (p.empty() || p.front() != a) continue;
      std::vector<std::size_t> rest(p.begin() + 1, p.end());
      m(path_index(basis[ix(arr.target)], rest), k) = 1;
    }
    acts.push_back(std::move(m));
  }
  return ZRep::lattice(q, dims, std::move(acts));
}

ZRep simple_lattice(const Quiver& q, int i) {
  q.check_vertex(i);
  std::vector<std::size_t> g(static_cast<std::size_t>(q.vertex_count()), 0);
  g[ix(i)] = 1;
  return ZRep::lattice(q, g, {});
}

// ---------------------------------------------------------------- Hom / Ext

namespace {

struct HomSystem {
  IntMatrix equations;
  std::size_t map_vars = 0;
  std::vector<std::size_t> offset;  // start of f_v in the variable vector
  IntMatrix zero_maps;              // generators of maps landing in the relations of N
};

HomSystem hom_system(const ZRep& m, const ZRep& n) {
  const Quiver& q = m.quiver();
  const auto nv = static_cast<std::size_t>(q.vertex_count());
  HomSystem s;
  std::size_t vars = 0;
  for (std::size_t v = 0; v < nv; ++v) {
    s.offset.push_back(vars);
    vars += n.generators(static_cast<int>(v + 1)) * m.generators(static_cast<int>(v + 1));
  }
  s.map_vars = vars;
  // auxiliary blocks H_v (f_v R^M_v = R^N_v H_v) and K_a
  std::vector<std::size_t> h_off(nv), k_off(q.arrow_count());
  for (std::size_t v = 0; v < nv; ++v) {
    int vv = static_cast<int>(v + 1);
    h_off[v] = vars;
    vars += n.relations(vv).cols() * m.relations(vv).cols();
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    k_off[a] = vars;
    vars += n.relations(arr.target).cols() * m.generators(arr.source);
  }

  std::vector<IntVector> rows;
  auto f_var = [&](int v, std::size_t i, std::size_t k) { return s.offset[ix(v)] + i * m.generators(v) + k; };

  for (int v = 1; v <= q.vertex_count(); ++v) {
    const IntMatrix& rm = m.relations(v);
    const IntMatrix& rn = n.relations(v);
    for (std::size_t i = 0; i < n.generators(v); ++i)
      for (std::size_t j = 0; j < rm.cols(); ++j) {
        IntVector row(vars);
        for (std::size_t k = 0; k < m.generators(v); ++k) row[f_var(v, i, k)] += rm(k, j);
        for (std::size_t l = 0; l < rn.cols(); ++l) row[h_off[ix(v)] + l * rm.cols() + j] -= rn(i, l);
        rows.push_back(std::move(row));
      }
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const int s_v = arr.source, t_v = arr.target;
    const IntMatrix& ma = m.action(a);
    const IntMatrix& na = n.action(a);
    const IntMatrix& rn = n.relations(t_v);
    for (std::size_t i = 0; i < n.generators(t_v); ++i)
      for (std::size_t j = 0; j < m.generators(s_v); ++j) {
        IntVector row(vars);
        for (std::size_t k = 0; k < m.generators(t_v); ++k) row[f_var(t_v, i, k)] += ma(k, j);
        for (std::size_t k = 0; k < n.generators(s_v); ++k) row[f_var(s_v, k, j)] -= na(i, k);
        for (std::size_t l = 0; l < rn.cols(); ++l) row[k_off[a] + l * m.generators(s_v) + j] -= rn(i, l);
        rows.push_back(std::move(row));
      }
  }
  s.equations = IntMatrix::from_rows(rows, vars);

  std::vector<IntVector> zero_gens;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const IntMatrix& rn = n.relations(v);
    for (std::size_t c = 0; c < rn.cols(); ++c)
      for (std::size_t j = 0; j < m.generators(v); ++j) {
        IntVector g(s.map_vars);
        for (std::size_t i = 0; i < n.generators(v); ++i) g[f_var(v, i, j)] = rn(i, c);
        zero_gens.push_back(std::move(g));
      }
  }
  s.zero_maps = IntMatrix::from_rows(zero_gens, s.map_vars).transpose();
  return s;
}

RepMap unpack_map(const ZRep& m, const ZRep& n, const std::vector<std::size_t>& offset, const IntVector& x) {
  RepMap f;
  for (int v = 1; v <= m.quiver().vertex_count(); ++v) {
    IntMatrix c(n.generators(v), m.generators(v));
    for (std::size_t i = 0; i < c.rows(); ++i)
      for (std::size_t k = 0; k < c.cols(); ++k) c(i, k) = x[offset[ix(v)] + i * c.cols() + k];
    f.components.push_back(std::move(c));
  }
  return f;
}

void check_same_quiver(const ZRep& m, const ZRep& n) {
  if (!(m.quiver() == n.quiver())) throw std::invalid_argument("representations live on different quivers");
}

}  // namespace

HomResult hom_group(const ZRep& m, const ZRep& n) {
  check_same_quiver(m, n);
  HomSystem s = hom_system(m, n);
  HomResult r;
  if (s.map_vars == 0) return r;
  IntMatrix ker = kernel_basis(s.equations);
  IntMatrix lifts = ker.block(0, 0, s.map_vars, ker.cols());
  r.group = subquotient(lifts, s.zero_maps);
  const bool plain = s.equations.cols() == s.map_vars && s.zero_maps.cols() == 0;
  IntMatrix basis = plain ? lifts : image_basis(lifts);
  for (std::size_t j = 0; j < basis.cols(); ++j) r.basis.push_back(unpack_map(m, n, s.offset, basis.column(j)));
  return r;
}

FinAbGroup ext1_group(const ZRep& m, const ZRep& n) {
  check_same_quiver(m, n);
  if (!m.is_lattice() || !n.is_lattice()) return ext1_via_resolution(m, n);
  // coker of  (f_v)_v  |->  (f_t M_a - N_a f_s)_a
  const Quiver& q = m.quiver();
  std::vector<std::size_t> offset;
  std::size_t vars = 0;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    offset.push_back(vars);
    vars += n.generators(v) * m.generators(v);
  }
  std::vector<IntVector> rows;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const int sv = arr.source, tv = arr.target;
    for (std::size_t i = 0; i < n.generators(tv); ++i)
      for (std::size_t j = 0; j < m.generators(sv); ++j) {
        IntVector row(vars);
        for (std::size_t k = 0; k < m.generators(tv); ++k)
          row[offset[ix(tv)] + i * m.generators(tv) + k] += m.action(a)(k, j);
        for (std::size_t k = 0; k < n.generators(sv); ++k)
          row[offset[ix(sv)] + k * m.generators(sv) + j] -= n.action(a)(i, k);
        rows.push_back(std::move(row));
      }
  }
  if (rows.empty()) return {};
  return cokernel_structure(IntMatrix::from_rows(rows, vars));
}

// ---------------------------------------------------------------- resolutions

bool PathEntry::is_zero() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Integer& c) { return c == 0; });
}

std::string PathEntry::to_string(const Quiver& q) const {
  auto paths = q.paths(target, source);
  std::string out;
  for (std::size_t k = 0; k < paths.size(); ++k) {
    const Integer& c = coefficients[k];
    if (c == 0) continue;
    std::string word;
    if (paths[k].arrows.empty()) {
      word = "e" + std::to_string(target);
    } else {
      for (std::size_t i = 0; i < paths[k].arrows.size(); ++i)
        word += (i ? "*a" : "a") + std::to_string(paths[k].arrows[i] + 1);
    }
    std::string term;
    if (c == 1)
      term = word;
    else if (c == -1)
      term = "-" + word;
    else
      term = c.get_str() + "*" + word;
    if (out.empty())
      out = term;
    else if (term.front() == '-')
      out += " - " + term.substr(1);
    else
      out += " + " + term;
  }
  return out.empty() ? "0" : out;
}

std::string ProjResolution::to_string() const {
  std::ostringstream os;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    os << "P" << k << " =";
    if (terms[k].empty()) os << " 0";
    for (std::size_t s = 0; s < terms[k].size(); ++s) os << (s ? " + P" : " P") << terms[k][s];
    os << '\n';
  }
  for (std::size_t k = 0; k < differentials.size(); ++k) {
    os << "d" << (k + 1) << " = [";
    for (std::size_t r = 0; r < differentials[k].size(); ++r) {
      os << (r ? "; " : "");
      for (std::size_t c = 0; c < differentials[k][r].size(); ++c)
        os << (c ? ", " : "") << differentials[k][r][c].to_string(quiver);
    }
    os << "]\n";
  }
  return os.str();
}

namespace {

// Generators of M_v modulo the images of incoming arrows and relations,
// taken from an SNF basis so that no unit factor survives.
std::vector<std::pair<int, IntVector>> top_generators(const ZRep& m) {
  std::vector<std::pair<int, IntVector>> gens;
  const Quiver& q = m.quiver();
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const std::size_t g = m.generators(v);
    if (g == 0) continue;
    IntMatrix w = m.relations(v);
    for (std::size_t a : q.arrows_into(v)) w = hstack(w, m.action(a));
    SnfDecomposition d = snf(w);
    for (std::size_t k = 0; k < g; ++k)
      if (k >= d.rank || d.S(k, k) != 1) gens.emplace_back(v, d.U.column(k));
  }
  return gens;
}

// Element of (sum_s P_{v_s})_w for every summand, with the chosen basis.
struct SumLayout {
  std::vector<int> vertices;
  std::vector<std::vector<std::vector<Path>>> paths;  // [w][s]
  std::vector<std::vector<std::size_t>> offset;       // [w][s]
  std::vector<std::size_t> dim;                       // [w]

  SumLayout(const Quiver& q, std::vector<int> vs) : vertices(std::move(vs)) {
    const auto n = static_cast<std::size_t>(q.vertex_count());
    paths.resize(n);
    offset.resize(n);
    dim.assign(n, 0);
    for (int w = 1; w <= q.vertex_count(); ++w)
      for (int v : vertices) {
        offset[ix(w)].push_back(dim[ix(w)]);
        paths[ix(w)].push_back(q.paths(v, w));
        dim[ix(w)] += paths[ix(w)].back().size();
      }
  }
};

// Vertexwise matrices of the map P_src -> P_tgt given by path entries
// [target summand][source summand].
RepMap realize(const Quiver& q, const SumLayout& tgt, const SumLayout& src,
               const std::vector<std::vector<PathEntry>>& entries) {
  RepMap f;
  for (int w = 1; w <= q.vertex_count(); ++w) {
    IntMatrix m(tgt.dim[ix(w)], src.dim[ix(w)]);
    for (std::size_t j = 0; j < src.vertices.size(); ++j) {
      const auto& src_paths = src.paths[ix(w)][j];  // v_j ~> w
      for (std::size_t k = 0; k < src_paths.size(); ++k)
        for (std::size_t s = 0; s < tgt.vertices.size(); ++s) {
          const PathEntry& e = entries[s][j];
          const auto coef_paths = q.paths(e.target, e.source);  // v_s ~> v_j
          for (std::size_t p = 0; p < coef_paths.size(); ++p) {
            if (e.coefficients[p] == 0) continue;
            auto cat = coef_paths[p].arrows;
            cat.insert(cat.end(), src_paths[k].arrows.begin(), src_paths[k].arrows.end());
            m(tgt.offset[ix(w)][s] + path_index(tgt.paths[ix(w)][s], cat), src.offset[ix(w)][j] + k) +=
                e.coefficients[p];
          }
        }
    }
    f.components.push_back(std::move(m));
  }
  return f;
}

// Lattice kernel of a vertexwise map into a presented representation,
// together with the inclusion matrices.
struct KernelData {
  ZRep rep;
  std::vector<IntMatrix> inclusion;
};

KernelData kernel_into(const ZRep& source, const RepMap& f, const ZRep& target) {
  const Quiver& q = source.quiver();
  KernelData kd;
  std::vector<std::size_t> ranks;
  for (int w = 1; w <= q.vertex_count(); ++w) {
    const IntMatrix& fw = f.at(w);
    IntMatrix basis;
    const std::size_t g = source.generators(w);
    if (fw.rows() == 0) {
      basis = IntMatrix::identity(g);
    } else {
      IntMatrix k = kernel_basis(hstack(fw, target.relations(w)));
      basis = image_basis(k.block(0, 0, g, k.cols()));
    }
    ranks.push_back(basis.cols());
    kd.inclusion.push_back(std::move(basis));
  }
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    auto c = solve(kd.inclusion[ix(arr.target)], source.action(a) * kd.inclusion[ix(arr.source)]);
    if (!c) throw std::logic_error("kernel is not a subrepresentation");
    acts.push_back(std::move(*c));
  }
  kd.rep = ZRep::lattice(q, ranks, std::move(acts));
  return kd;
}

}  // namespace

ProjResolution projective_resolution(const ZRep& m) {
  const Quiver& q = m.quiver();
  ProjResolution res;
  res.quiver = q;

  auto top = top_generators(m);
  std::vector<int> verts;
  for (const auto& [v, u] : top) {
    verts.push_back(v);
    res.augmentation.push_back(u);
  }
  res.terms.push_back(verts);
  SumLayout layout(q, verts);
  ZRep current = projective_sum(q, verts);

  RepMap eps;
  for (int w = 1; w <= q.vertex_count(); ++w) {
    IntMatrix e(m.generators(w), layout.dim[ix(w)]);
    for (std::size_t s = 0; s < top.size(); ++s) {
      const auto& ps = layout.paths[ix(w)][s];
      for (std::size_t k = 0; k < ps.size(); ++k) {
        IntVector img = m.path_action(ps[k]) * top[s].second;
        for (std::size_t i = 0; i < img.size(); ++i) e(i, layout.offset[ix(w)][s] + k) = img[i];
      }
    }
    eps.components.push_back(std::move(e));
  }
  KernelData ker = kernel_into(current, eps, m);

  for (int level = 0; !ker.rep.is_zero(); ++level) {
    if (level > 2) throw std::logic_error("projective resolution longer than the global dimension");
    auto gens = top_generators(ker.rep);
    std::vector<int> next_verts;
    std::vector<std::vector<PathEntry>> entries(layout.vertices.size(),
                                                std::vector<PathEntry>(gens.size()));
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const int v = gens[j].first;
      next_verts.push_back(v);
      IntVector x = ker.inclusion[ix(v)] * gens[j].second;  // element of (current)_v
      // first nonzero coefficient positive
      auto lead = std::find_if(x.begin(), x.end(), [](const Integer& c) { return c != 0; });
      if (lead != x.end() && *lead < 0)
        for (auto& c : x) c = -c;
      for (std::size_t s = 0; s < layout.vertices.size(); ++s) {
        const auto& ps = layout.paths[ix(v)][s];
        PathEntry e{layout.vertices[s], v, IntVector(ps.size())};
        for (std::size_t k = 0; k < ps.size(); ++k) e.coefficients[k] = x[layout.offset[ix(v)][s] + k];
        entries[s][j] = std::move(e);
      }
    }
    SumLayout next_layout(q, next_verts);
    RepMap d = realize(q, layout, next_layout, entries);
    ZRep next = projective_sum(q, next_verts);
    res.terms.push_back(next_verts);
    res.differentials.push_back(std::move(entries));
    ker = kernel_into(next, d, current);
    layout = std::move(next_layout);
    current = std::move(next);
  }
  return res;
}

RepMap realize_differential(const ProjResolution& r, std::size_t k) {
  SumLayout tgt(r.quiver, r.terms.at(k));
  SumLayout src(r.quiver, r.terms.at(k + 1));
  return realize(r.quiver, tgt, src, r.differentials.at(k));
}

namespace {

Presentation hom_from_sum(const std::vector<int>& vertices, const ZRep& n) {
  Presentation p;
  p.relations = IntMatrix(0, 0);
  for (int v : vertices) {
    p.generators += n.generators(v);
    p.relations = direct_sum(p.relations, n.relations(v));
  }
  return p;
}

// Hom(P_k, N) -> Hom(P_{k+1}, N) induced by d_k.
IntMatrix hom_differential(const ProjResolution& r, std::size_t k, const ZRep& n) {
  const auto& tgt = r.terms[k];
  const auto& src = r.terms[k + 1];
  std::vector<std::size_t> row_off, col_off;
  std::size_t rows = 0, cols = 0;
  for (int v : src) {
    row_off.push_back(rows);
    rows += n.generators(v);
  }
  for (int v : tgt) {
    col_off.push_back(cols);
    cols += n.generators(v);
  }
  IntMatrix m(rows, cols);
  for (std::size_t s = 0; s < tgt.size(); ++s)
    for (std::size_t j = 0; j < src.size(); ++j) {
      const PathEntry& e = r.differentials[k][s][j];
      auto paths = r.quiver.paths(e.target, e.source);
      for (std::size_t p = 0; p < paths.size(); ++p) {
        if (e.coefficients[p] == 0) continue;
        IntMatrix np = n.path_action(paths[p]);
        for (std::size_t a = 0; a < np.rows(); ++a)
          for (std::size_t b = 0; b < np.cols(); ++b) m(row_off[j] + a, col_off[s] + b) += e.coefficients[p] * np(a, b);
      }
    }
  return m;
}

}  // namespace

FinAbGroup ext1_via_resolution(const ZRep& m, const ZRep& n) {
  check_same_quiver(m, n);
  ProjResolution r = projective_resolution(m);
  if (r.terms.size() < 2) return {};
  Presentation x = hom_from_sum(r.terms[0], n);
  Presentation y = hom_from_sum(r.terms[1], n);
  IntMatrix f = hom_differential(r, 0, n);
  Presentation z;
  IntMatrix g(0, y.generators);
  if (r.terms.size() > 2) {
    z = hom_from_sum(r.terms[2], n);
    g = hom_differential(r, 1, n);
  }
  return homology(x, f, y, g, z);
}

FinAbGroup hom_via_resolution(const ZRep& m, const ZRep& n) {
  check_same_quiver(m, n);
  ProjResolution r = projective_resolution(m);
  Presentation x = hom_from_sum(r.terms[0], n);
  Presentation y;
  IntMatrix g(0, x.generators);
  if (r.terms.size() > 1) {
    y = hom_from_sum(r.terms[1], n);
    g = hom_differential(r, 0, n);
  }
  return homology(Presentation{}, IntMatrix(x.generators, 0), x, g, y);
}

// ---------------------------------------------------------------- fields

DimVector FieldRep::dim_vector() const {
  DimVector d;
  for (auto x : dims) d.emplace_back(static_cast<unsigned long>(x));
  return d;
}

bool FieldRep::is_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
}

FieldRep base_change(const ZRep& m, unsigned long p) {
  const Quiver& q = m.quiver();
  FieldRep out{q, Field(p), {}, {}};
  const Field& f = out.field;
  std::vector<FieldMatrix> proj, sect;  // quotient coordinates and a section
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const std::size_t g = m.generators(v);
    FieldMatrix rel(m.relations(v), f);
    FieldMatrix aug(g, rel.cols() + g);
    for (std::size_t i = 0; i < g; ++i) {
      for (std::size_t j = 0; j < rel.cols(); ++j) aug(i, j) = rel(i, j);
      aug(i, rel.cols() + i) = 1;
    }
    auto piv = pivot_columns(aug, f);
    FieldMatrix basis(g, g);
    std::vector<std::size_t> free_cols;
    std::size_t c = 0;
    for (std::size_t pc : piv) {
      for (std::size_t i = 0; i < g; ++i) basis(i, c) = aug(i, pc);
      if (pc >= rel.cols()) free_cols.push_back(c);
      ++c;
    }
    FieldMatrix inv = g ? inverse(basis, f) : FieldMatrix();
    const std::size_t d = free_cols.size();
    FieldMatrix pr(d, g), se(g, d);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i < g; ++i) {
        pr(k, i) = inv(free_cols[k], i);
        se(i, k) = basis(i, free_cols[k]);
      }
    }
    out.dims.push_back(d);
    proj.push_back(std::move(pr));
    sect.push_back(std::move(se));
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    FieldMatrix act(m.action(a), f);
    out.actions.push_back(multiply(multiply(proj[ix(arr.target)], act, f), sect[ix(arr.source)], f));
  }
  return out;
}

FieldDims field_hom_ext_dims(const FieldRep& m, const FieldRep& n) {
  const Quiver& q = m.quiver;
  const Field& f = m.field;
  if (f.characteristic() != n.field.characteristic()) throw std::invalid_argument("different base fields");
  std::vector<std::size_t> offset;
  std::size_t vars = 0;
  for (std::size_t v = 0; v < m.dims.size(); ++v) {
    offset.push_back(vars);
    vars += n.dims[v] * m.dims[v];
  }
  std::size_t eqs = 0;
  for (const auto& arr : q.arrows()) eqs += n.dims[ix(arr.target)] * m.dims[ix(arr.source)];
  FieldMatrix sys(eqs, vars);
  std::size_t row = 0;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    const std::size_t s = ix(arr.source), t = ix(arr.target);
    for (std::size_t i = 0; i < n.dims[t]; ++i)
      for (std::size_t j = 0; j < m.dims[s]; ++j, ++row) {
        for (std::size_t k = 0; k < m.dims[t]; ++k)
          sys(row, offset[t] + i * m.dims[t] + k) += m.actions[a](k, j);
        for (std::size_t k = 0; k < n.dims[s]; ++k)
          sys(row, offset[s] + k * m.dims[s] + j) -= n.actions[a](i, k);
        for (std::size_t c = 0; c < vars; ++c) sys(row, c) = f.reduce(sys(row, c));
      }
  }
  std::size_t r = rank(sys, f);
  return FieldDims{vars - r, eqs - r};
}

// ---------------------------------------------------------------- rigidity

bool is_rigid(const ZRep& m) { return ext1_group(m, m).is_zero(); }

bool is_exceptional(const ZRep& m) {
  if (!is_rigid(m)) return false;
  return hom_group(m, m).group == FinAbGroup{1, {}};
}

ZRep direct_sum(const ZRep& m, const ZRep& n) {
  check_same_quiver(m, n);
  const Quiver& q = m.quiver();
  std::vector<std::size_t> g;
  std::vector<IntMatrix> rels, acts;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    g.push_back(m.generators(v) + n.generators(v));
    rels.push_back(direct_sum(m.relations(v), n.relations(v)));
  }
  for (std::size_t a = 0; a < q.arrow_count(); ++a) acts.push_back(direct_sum(m.action(a), n.action(a)));
  return ZRep(q, g, rels, acts);
}

namespace {

// r o s as an integer multiple of the identity of an exceptional S.
Integer scalar_of(const ZRep& s, const RepMap& endo) {
  for (int v = 1; v <= s.quiver().vertex_count(); ++v) {
    if (s.generators(v) == 0) continue;
    Integer c = endo.at(v)(0, 0);
    for (int w = 1; w <= s.quiver().vertex_count(); ++w)
      if (!(endo.at(w) == c * IntMatrix::identity(s.generators(w))))
        throw PreconditionViolated("endomorphism of the summand is not scalar; summand is not exceptional");
    return c;
  }
  return 0;
}

}  // namespace

ZRep strip_summand(const ZRep& m, const ZRep& s) {
  check_same_quiver(m, s);
  if (!m.is_lattice() || !s.is_lattice()) throw std::invalid_argument("strip_summand expects lattices");
  auto into = hom_group(s, m).basis;
  auto back = hom_group(m, s).basis;
  if (into.empty() || back.empty()) throw NotASummand("no maps between summand candidate and module");
  IntMatrix pairing(back.size(), into.size());
  for (std::size_t b = 0; b < back.size(); ++b)
    for (std::size_t a = 0; a < into.size(); ++a) pairing(b, a) = scalar_of(s, compose(back[b], into[a]));
  SnfDecomposition d = snf(pairing);
  if (d.rank == 0 || d.S(0, 0) != 1) throw NotASummand("composition pairing has no unit value");
  // y^T U D V x = 1 with y^T U = e_1^T and V x = e_1
  IntVector y = d.U_inv.row(0);
  IntVector x = d.V_inv.column(0);
  RepMap r;
  for (int v = 1; v <= m.quiver().vertex_count(); ++v) {
    IntMatrix c(s.generators(v), m.generators(v));
    for (std::size_t b = 0; b < back.size(); ++b) c = c + y[b] * back[b].at(v);
    r.components.push_back(std::move(c));
  }
  return kernel(m, r);
}

bool are_isomorphic_exceptional(const ZRep& m, const ZRep& n) {
  if (!is_exceptional(m) || !is_exceptional(n))
    throw PreconditionViolated("are_isomorphic_exceptional needs exceptional inputs");
  if (m.rank_vector() != n.rank_vector()) return false;
  for (const auto& f : hom_group(m, n).basis) {
    bool iso = true;
    for (int v = 1; v <= m.quiver().vertex_count() && iso; ++v) {
      if (f.at(v).rows() == 0) continue;
      Integer det = determinant(f.at(v));
      iso = det == 1 || det == -1;
    }
    if (iso) return true;
  }
  return false;
}

ZRep dual(const ZRep& m) {
  if (!m.is_lattice()) throw std::invalid_argument("dual is only defined for lattices");
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < m.quiver().arrow_count(); ++a) acts.push_back(m.action(a).transpose());
  return ZRep::lattice(m.quiver().opposite(), m.generator_counts(), std::move(acts));
}

ZRep kernel(const ZRep& source, const RepMap& f) {
  const Quiver& q = source.quiver();
  std::vector<std::size_t> g(static_cast<std::size_t>(q.vertex_count()));
  for (int v = 1; v <= q.vertex_count(); ++v) g[ix(v)] = f.at(v).rows();
  return kernel_into(source, f, ZRep::lattice(q, g, {})).rep;
}

CokernelResult cokernel(const ZRep& target, const RepMap& f) {
  const Quiver& q = target.quiver();
  std::vector<IntMatrix> pr, se;
  std::vector<std::size_t> ranks;
  bool saturated = true;
  for (int v = 1; v <= q.vertex_count(); ++v) {
    const IntMatrix& fv = f.at(v);
    const std::size_t g = target.generators(v);
    SnfDecomposition d = snf(fv.cols() ? fv : IntMatrix(g, 0));
    for (std::size_t i = 0; i < d.rank; ++i)
      if (d.S(i, i) != 1) saturated = false;
    const std::size_t r = g - d.rank;
    pr.push_back(d.U_inv.block(d.rank, 0, r, g));
    se.push_back(d.U.block(0, d.rank, g, r));
    ranks.push_back(r);
  }
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) {
    const auto& arr = q.arrow(a);
    acts.push_back(pr[ix(arr.target)] * target.action(a) * se[ix(arr.source)]);
  }
  return {ZRep::lattice(q, ranks, std::move(acts)), saturated};
}

std::optional<int> projective_vertex(const ZRep& m) {
  if (!m.is_lattice()) return std::nullopt;
  ProjResolution r = projective_resolution(m);
  if (r.terms.size() != 1 || r.terms[0].size() != 1) return std::nullopt;
  return r.terms[0][0];
}

std::optional<int> injective_vertex(const ZRep& m) {
  if (!m.is_lattice()) return std::nullopt;
  return projective_vertex(dual(m));
}

}  // namespace clusterforge
