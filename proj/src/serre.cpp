#include "clusterforge/serre.hpp"

#include <stdexcept>

namespace clusterforge {

namespace {

std::size_t ix(int v) { return static_cast<std::size_t>(v - 1); }

bool is_prefix_split(const std::vector<std::size_t>& r, const std::vector<std::size_t>& s,
                     const std::vector<std::size_t>& p) {
  if (s.size() + p.size() != r.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (r[i] != s[i]) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (r[s.size() + i] != p[i]) return false;
  return true;
}

bool surjective(const IntMatrix& m) {
  if (m.rows() == 0) return true;
  SnfDecomposition d = snf(m);
  if (d.rank != m.rows()) return false;
  for (std::size_t i = 0; i < d.rank; ++i)
    if (d.S(i, i) != 1) return false;
  return true;
}

bool simple_at(const ZRep& m, int v) {
  for (int w = 1; w <= m.quiver().vertex_count(); ++w)
    if (m.generators(w) != (w == v ? 1u : 0u)) return false;
  return true;
}

}  // namespace

ZRep injective_sum(const Quiver& q, const std::vector<int>& vertices) {
  ZRep out = ZRep::zero(q);
  for (int v : vertices) out = direct_sum(out, injective_lattice(q, v));
  return out;
}

RepMap nakayama(const Quiver& q, const std::vector<int>& target_terms, const std::vector<int>& source_terms,
                const std::vector<std::vector<PathEntry>>& entries) {
  RepMap f;
  for (int w = 1; w <= q.vertex_count(); ++w) {
    std::vector<std::vector<Path>> src_basis, tgt_basis;
    std::vector<std::size_t> src_off, tgt_off;
    std::size_t rows = 0, cols = 0;
    for (int v : source_terms) {
      src_off.push_back(cols);
      src_basis.push_back(q.paths(w, v));
      cols += src_basis.back().size();
    }
    for (int v : target_terms) {
      tgt_off.push_back(rows);
      tgt_basis.push_back(q.paths(w, v));
      rows += tgt_basis.back().size();
    }
    IntMatrix m(rows, cols);
    for (std::size_t t = 0; t < target_terms.size(); ++t)
      for (std::size_t s = 0; s < source_terms.size(); ++s) {
        const PathEntry& e = entries[t][s];
        const auto coef_paths = q.paths(e.target, e.source);
        for (std::size_t p = 0; p < coef_paths.size(); ++p) {
          if (e.coefficients[p] == 0) continue;
          for (std::size_t i = 0; i < src_basis[s].size(); ++i)
            for (std::size_t j = 0; j < tgt_basis[t].size(); ++j)
              if (is_prefix_split(src_basis[s][i].arrows, tgt_basis[t][j].arrows, coef_paths[p].arrows))
                m(tgt_off[t] + j, src_off[s] + i) += e.coefficients[p];
        }
      }
    f.components.push_back(std::move(m));
  }
  return f;
}

ZRep tau(const ZRep& m) {
  if (!m.is_lattice()) throw std::invalid_argument("tau is only defined on lattices");
  if (projective_vertex(m)) throw IsProjective("tau of a projective lattice");
  if (!is_exceptional(m)) throw NotExceptional("tau needs an exceptional lattice");
  return tau_known_exceptional(m);
}

ZRep tau_known_exceptional(const ZRep& m) {
  if (!m.is_lattice()) throw std::invalid_argument("tau is only defined on lattices");
  ProjResolution r = projective_resolution(m);
  if (r.length() == 0) throw IsProjective("tau of a projective lattice");
  if (r.length() != 1) throw std::logic_error("lattice resolution of unexpected length");
  const Quiver& q = m.quiver();
  RepMap nf = nakayama(q, r.terms[0], r.terms[1], r.differentials[0]);
  for (const auto& c : nf.components)
    if (!surjective(c)) throw NotExceptional("nu of the resolution is not surjective");
  return kernel(injective_sum(q, r.terms[1]), nf);
}

ZRep tau_inv(const ZRep& m) {
  if (!m.is_lattice()) throw std::invalid_argument("tau_inv is only defined on lattices");
  if (injective_vertex(m)) throw IsInjective("tau^-1 of an injective lattice");
  try {
    return dual(tau(dual(m)));
  } catch (const IsProjective&) {
    throw IsInjective("tau^-1 of an injective lattice");
  }
}

ZRep tau_inv_known_exceptional(const ZRep& m) {
  if (!m.is_lattice()) throw std::invalid_argument("tau_inv is only defined on lattices");
  try {
    return dual(tau_known_exceptional(dual(m)));
  } catch (const IsProjective&) {
    throw IsInjective("tau^-1 of an injective lattice");
  }
}

ShiftedModule f_apply(const ShiftedModule& x, int power, bool known_exceptional) {
  const Quiver& q = x.module.quiver();
  if (power == 1) {
    if (auto i = projective_vertex(x.module)) return {injective_lattice(q, *i), x.shift - 2};
    return {known_exceptional ? tau_known_exceptional(x.module) : tau(x.module), x.shift - 1};
  }
  if (power == -1) {
    if (auto i = injective_vertex(x.module)) return {projective(q, *i), x.shift + 2};
    return {known_exceptional ? tau_inv_known_exceptional(x.module) : tau_inv(x.module), x.shift + 1};
  }
  throw std::invalid_argument("f_apply power must be +1 or -1");
}

ZRep reflect(const ZRep& m, int v) {
  const Quiver& q = m.quiver();
  q.check_vertex(v);
  if (!m.is_lattice()) throw std::invalid_argument("reflect is only defined on lattices");
  if (!q.is_sink(v) && !q.is_source(v)) throw VertexNotSinkOrSource("vertex " + std::to_string(v));
  if (simple_at(m, v)) throw SimpleAtVertex("simple lattice at vertex " + std::to_string(v));
  const Quiver rq = q.reflected_at(v);
  std::vector<std::size_t> gens = m.generator_counts();
  std::vector<IntMatrix> acts;
  for (std::size_t a = 0; a < q.arrow_count(); ++a) acts.push_back(m.action(a));

  if (q.is_sink(v)) {
    // M'_v = ker(sum over a: i -> v of M_i -> M_v)
    auto in = q.arrows_into(v);
    IntMatrix h(m.generators(v), 0);
    std::vector<std::size_t> off;
    for (std::size_t a : in) {
      off.push_back(h.cols());
      h = hstack(h, m.action(a));
    }
    IntMatrix k = kernel_basis(h);
    gens[ix(v)] = k.cols();
    for (std::size_t j = 0; j < in.size(); ++j) {
      std::size_t a = in[j];
      acts[a] = k.block(off[j], 0, m.generators(q.arrow(a).source), k.cols());
    }
  } else {
    // M'_v = coker(M_v -> sum over a: v -> i of M_i) modulo torsion
    auto out = q.arrows_out_of(v);
    IntMatrix h(0, m.generators(v));
    std::vector<std::size_t> off;
    for (std::size_t a : out) {
      off.push_back(h.rows());
      h = vstack(h, m.action(a));
    }
    SnfDecomposition d = snf(h);
    const std::size_t r = h.rows() - d.rank;
    IntMatrix proj = d.U_inv.block(d.rank, 0, r, h.rows());
    gens[ix(v)] = r;
    for (std::size_t j = 0; j < out.size(); ++j) {
      std::size_t a = out[j];
      acts[a] = proj.block(0, off[j], r, m.generators(q.arrow(a).target));
    }
  }
  return ZRep::lattice(rq, gens, std::move(acts));
}

}  // namespace clusterforge
