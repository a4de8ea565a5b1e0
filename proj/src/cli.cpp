#include "clusterforge/cli.hpp"

#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "clusterforge/cluster.hpp"
#include "clusterforge/io.hpp"
#include "json.hpp"

namespace clusterforge {

namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string quiver;
  std::vector<std::string> reps;
  std::vector<unsigned long> primes;
  int dim_bound = 12;
  std::size_t max_nodes = 10000;
  std::string format = "text";
  int power = 1;
  std::string cluster;
  int position = 0;
  bool interactive = false;
};

std::string error_name(const std::exception& e) {
  if (dynamic_cast<const CyclicQuiver*>(&e)) return "CyclicQuiver";
  if (dynamic_cast<const NotASummand*>(&e)) return "NotASummand";
  if (dynamic_cast<const PreconditionViolated*>(&e)) return "PreconditionViolated";
  if (dynamic_cast<const IsProjective*>(&e)) return "IsProjective";
  if (dynamic_cast<const IsInjective*>(&e)) return "IsInjective";
  if (dynamic_cast<const NotExceptional*>(&e)) return "NotExceptional";
  if (dynamic_cast<const VertexNotSinkOrSource*>(&e)) return "VertexNotSinkOrSource";
  if (dynamic_cast<const SimpleAtVertex*>(&e)) return "SimpleAtVertex";
  if (dynamic_cast<const NotFoundWithinBound*>(&e)) return "NotFoundWithinBound";
  if (dynamic_cast<const ConstructionFailed*>(&e)) return "ConstructionFailed";
  if (dynamic_cast<const BalanceUnsolvable*>(&e)) return "BalanceUnsolvable";
  return "error";
}

ordered_json group_json(const FinAbGroup& g) {
  ordered_json t = ordered_json::array();
  for (const auto& d : g.torsion) t.push_back(d.get_str());
  return {{"group", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", t}};
}

std::vector<std::string> labels(const std::vector<ClusterObject>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.label());
  return out;
}

std::string braces(const std::vector<ClusterObject>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].label();
  return s + "}";
}

class Runner {
 public:
  Runner(const Options& o, std::istream& in, std::ostream& out) : o_(o), in_(in), out_(out) {}

  Quiver quiver() {
    Quiver q = load_quiver(o_.quiver);
    validate(q);
    return q;
  }

  ZRep rep(const std::string& arg, const Quiver& q) {
    ZRep m;
    try {
      m = resolve_rep(arg, q);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (!m.descends()) throw PreconditionViolated(arg + ": arrow actions do not respect the relations");
    return m;
  }

  int check() {
    Quiver q = load_quiver(o_.quiver);
    std::vector<int> order;
    try {
      order = validate(q);
    } catch (const CyclicQuiver& e) {
      std::string cyc;
      for (int v : e.cycle()) cyc += std::to_string(v) + " -> ";
      cyc += std::to_string(e.cycle().front());
      if (o_.format == "structured")
        out_ << ordered_json{{"valid", false}, {"cycle", e.cycle()}}.dump(2) << "\n";
      else
        out_ << "invalid: oriented cycle " << cyc << "\n";
      return 1;
    }
    std::string type = dynkin_type(q).to_string();
    if (o_.format == "structured") {
      out_ << ordered_json{{"valid", true}, {"vertices", q.vertex_count()}, {"arrows", q.arrow_count()},
                           {"order", order}, {"type", type}}
                  .dump(2)
           << "\n";
    } else {
      out_ << "valid: " << q.vertex_count() << " vertices, " << q.arrow_count() << " arrows\norder:";
      for (int v : order) out_ << " " << v;
      out_ << "\ntype: " << type << "\n";
    }
    return 0;
  }

  int hom_or_ext(bool ext) {
    Quiver q = quiver();
    if (o_.reps.size() != 2) throw UsageError("expected two representations");
    ZRep m = rep(o_.reps[0], q), n = rep(o_.reps[1], q);
    const std::string what = ext ? "Ext^1" : "Hom";
    if (o_.primes.empty()) {
      FinAbGroup g = ext ? ext1_group(m, n) : hom_group(m, n).group;
      if (o_.format == "structured")
        out_ << group_json(g).dump(2) << "\n";
      else
        out_ << g.to_string() << "\n";
      return 0;
    }
    ordered_json j = ordered_json::array();
    for (unsigned long p : o_.primes) {
      FieldDims d = field_hom_ext_dims(base_change(m, p), base_change(n, p));
      std::size_t v = ext ? d.ext1 : d.hom;
      if (o_.format == "structured")
        j.push_back({{"prime", p}, {"dimension", v}});
      else
        out_ << "F_" << p << ": dim " << what << " = " << v << "\n";
    }
    if (o_.format == "structured") out_ << j.dump(2) << "\n";
    return 0;
  }

  int tau_cmd() {
    Quiver q = quiver();
    if (o_.reps.size() != 1) throw UsageError("expected one representation");
    ZRep m = rep(o_.reps[0], q);
    for (int k = 0; k < o_.power; ++k) m = tau(m);
    for (int k = 0; k > o_.power; --k) m = tau_inv(m);
    out_ << format_rep(m);
    return 0;
  }

  int pool_cmd() {
    Quiver q = quiver();
    RigidPool pool = build_pool(q, o_.dim_bound);
    auto entries = pool.entries();
    if (o_.format == "structured") {
      ordered_json objs = ordered_json::array();
      for (const auto& e : entries)
        objs.push_back({{"key", e.object.key()}, {"label", e.object.label()}, {"provenance", e.provenance}});
      out_ << ordered_json{{"dim_bound", o_.dim_bound}, {"complete", pool.complete()}, {"size", entries.size()},
                           {"objects", objs}}
                  .dump(2)
           << "\n";
      return 0;
    }
    out_ << "pool: " << entries.size() << " objects, dim bound " << o_.dim_bound
         << (pool.complete() ? ", complete" : ", not known to be complete") << "\n";
    for (const auto& e : entries) out_ << "  " << e.object.label() << "  " << e.provenance << "\n";
    return 0;
  }

  void print_options(const std::vector<ClusterObject>& t, RigidPool& pool) {
    out_ << "cluster: " << braces(t) << "\n";
    for (std::size_t k = 0; k < t.size(); ++k) {
      out_ << "  " << k + 1 << ": " << t[k].label() << " -> ";
      try {
        auto r = mutate(t, k, pool);
        out_ << r.cluster[k].label() << "  Ext^1_C = " << ext1_c(t[k], r.cluster[k]).to_string() << "\n";
      } catch (const NotFoundWithinBound&) {
        out_ << "? (not found within dim bound " << o_.dim_bound << ")\n";
      }
    }
  }

  int mutate_cmd() {
    Quiver q = quiver();
    RigidPool pool = build_pool(q, o_.dim_bound);
    std::vector<ClusterObject> t;
    try {
      t = parse_cluster(o_.cluster, pool);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    TiltingCheck c = is_cluster_tilting(t);
    if (!c.ok) throw PreconditionViolated("not cluster-tilting: " + c.certificate);
    if (o_.interactive) return interactive(t, pool);
    if (o_.position < 1 || o_.position > static_cast<int>(t.size()))
      throw UsageError("position must be between 1 and " + std::to_string(t.size()));
    auto k = static_cast<std::size_t>(o_.position - 1);
    MutationResult r = mutate(t, k, pool);
    if (o_.format == "structured") {
      const auto& d = r.triangles;
      out_ << ordered_json{{"cluster", labels(t)},
                           {"position", o_.position},
                           {"result", labels(r.cluster)},
                           {"ext1", group_json(ext1_c(d.x, d.y))},
                           {"e", labels(d.e)},
                           {"e_prime", labels(d.e_prime)},
                           {"constructed", r.constructed}}
                  .dump(2)
           << "\n";
      return 0;
    }
    out_ << "cluster: " << braces(t) << "\n";
    out_ << "mutate at " << o_.position << ": " << t[k].label() << " -> " << r.cluster[k].label() << "  (Ext^1_C = "
         << ext1_c(t[k], r.cluster[k]).to_string() << ")\n";
    out_ << "result: " << braces(r.cluster) << "\n";
    out_ << "exchange triangles:\n" << r.triangles.to_string();
    return 0;
  }

  int interactive(std::vector<ClusterObject> t, RigidPool& pool) {
    print_options(t, pool);
    std::string line;
    while (out_ << "> " << std::flush, std::getline(in_, line)) {
      std::istringstream ls(line);
      std::string word;
      if (!(ls >> word)) continue;
      if (word == "q" || word == "quit") break;
      int k = 0;
      try {
        k = std::stoi(word);
      } catch (const std::exception&) {
        k = 0;
      }
      if (k < 1 || k > static_cast<int>(t.size())) {
        out_ << "enter a position 1.." << t.size() << " or q\n";
        continue;
      }
      try {
        MutationResult r = mutate(t, static_cast<std::size_t>(k - 1), pool);
        out_ << r.triangles.to_string();
        t = r.cluster;
      } catch (const NotFoundWithinBound& e) {
        out_ << "NotFoundWithinBound: " << e.what() << "\n";
        continue;
      }
      print_options(t, pool);
    }
    out_ << "\n";
    return 0;
  }

  int graph_cmd() {
    Quiver q = quiver();
    RigidPool pool = build_pool(q, o_.dim_bound);
    ExchangeGraph g = exchange_graph(pool, o_.max_nodes);
    if (o_.format == "dot") {
      out_ << g.to_dot();
    } else if (o_.format == "structured") {
      out_ << g.to_json();
    } else {
      out_ << "nodes: " << g.nodes.size() << "\nedges: " << g.edges.size() << "\n";
      if (g.truncated) out_ << "truncated\n";
      for (const auto& n : g.notes) out_ << "note: " << n << "\n";
      for (std::size_t i = 0; i < g.nodes.size(); ++i) out_ << "  n" << i << " " << braces(g.nodes[i]) << "\n";
      for (const auto& e : g.edges)
        out_ << "  n" << e.from << " -- n" << e.to << "  at " << e.position + 1 << ": " << e.triangles.x.label()
             << " <-> " << e.triangles.y.label() << "\n";
    }
    return 0;
  }

  int verify_cmd();

 private:
  const Options& o_;
  std::istream& in_;
  std::ostream& out_;
};

struct Check {
  std::string name;
  std::size_t cases = 0;
  std::vector<std::string> failures{};

  void fail(const std::string& what) { failures.push_back(what); }
};

int Runner::verify_cmd() {
  Quiver q = quiver();
  std::vector<unsigned long> primes = o_.primes;
  if (primes.empty()) primes = {2, 3, 5, 7};
  RigidPool pool = build_pool(q, o_.dim_bound);
  auto objs = pool.objects();
  std::vector<Check> checks;

  std::vector<ZRep> modules;
  for (const auto& x : objs)
    if (x.is_module()) modules.push_back(x.rep());

  if (!o_.reps.empty()) {
    Check c{"input representations are exceptional lattices"};
    for (const auto& path : o_.reps) {
      ++c.cases;
      ZRep m;
      try {
        m = resolve_rep(path, q);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      if (!m.descends())
        c.fail(path + ": actions do not respect the relations");
      else if (!m.is_lattice())
        c.fail(path + ": not a lattice");
      else if (!is_exceptional(m))
        c.fail(path + ": not exceptional (Ext^1 = " + ext1_group(m, m).to_string() + ", End = " +
               hom_group(m, m).group.to_string() + ")");
      else
        modules.push_back(m);
    }
    checks.push_back(c);
  }

  Check sym{"2-CY rank symmetry"}, dec{"Ext decomposition"}, euler{"Euler pairing"};
  for (const auto& x : objs)
    for (const auto& y : objs) {
      ++sym.cases;
      FinAbGroup xy = ext1_c(x, y), yx = ext1_c(y, x);
      if (!xy.is_free() || xy.free_rank != yx.free_rank)
        sym.fail("Ext^1_C(" + x.label() + ", " + y.label() + ") = " + xy.to_string() + " but reversed " + yx.to_string());
      if (x.is_module() && y.is_module()) {
        ++dec.cases;
        std::size_t want = ext1_group(x.rep(), y.rep()).free_rank + ext1_group(y.rep(), x.rep()).free_rank;
        if (xy.free_rank != want)
          dec.fail("Ext^1_C(" + x.label() + ", " + y.label() + ") has rank " + std::to_string(xy.free_rank) +
                   ", module Ext ranks sum to " + std::to_string(want));
      }
    }
  for (const auto& m : modules)
    for (const auto& n : modules) {
      ++euler.cases;
      Integer lhs = Integer(hom_group(m, n).group.free_rank) - Integer(ext1_group(m, n).free_rank);
      Integer rhs = euler_form(q, m.rank_vector(), n.rank_vector());
      if (lhs != rhs)
        euler.fail("<" + dims_to_string(m.rank_vector()) + ", " + dims_to_string(n.rank_vector()) + ">: rank Hom - rank Ext^1 = " +
                   lhs.get_str() + ", Euler form " + rhs.get_str());
    }
  checks.push_back(sym);
  checks.push_back(dec);
  checks.push_back(euler);

  Check cox{"tau and Coxeter consistency"};
  for (const auto& m : modules) {
    if (projective_vertex(m)) continue;
    ++cox.cases;
    ZRep t = tau(m);
    IntVector d = m.rank_vector();
    if (IntVector(t.rank_vector()) != coxeter_apply(q, d, 1))
      cox.fail("dim tau" + dims_to_string(d) + " = " + dims_to_string(t.rank_vector()) + ", Coxeter gives " +
               dims_to_string(coxeter_apply(q, d, 1)));
    else if (!are_isomorphic_exceptional(tau_inv(t), m))
      cox.fail("tau^-1 tau " + dims_to_string(d) + " is not isomorphic to it");
  }
  checks.push_back(cox);

  for (unsigned long p : primes) {
    Check c{"bijection mod " + std::to_string(p)};
    BijectionReport r = verify_bijection_mod_p(pool, p);
    c.cases = r.objects;
    for (const auto& v : r.violations) c.fail(v);
    checks.push_back(c);
  }

  bool ok = true;
  ordered_json j = ordered_json::array();
  for (const auto& c : checks) {
    ok = ok && c.failures.empty();
    if (o_.format == "structured") {
      j.push_back({{"check", c.name}, {"cases", c.cases}, {"pass", c.failures.empty()}, {"failures", c.failures}});
      continue;
    }
    if (c.failures.empty()) {
      out_ << "PASS " << c.name << " (" << c.cases << " cases)\n";
    } else {
      out_ << "FAIL " << c.name << ": " << c.failures.front();
      if (c.failures.size() > 1) out_ << " (and " << c.failures.size() - 1 << " more)";
      out_ << "\n";
    }
  }
  if (o_.format == "structured")
    out_ << ordered_json{{"pool", objs.size()}, {"pass", ok}, {"checks", j}}.dump(2) << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Computations in the integral cluster category of an acyclic quiver", "clusterforge"};
  app.require_subcommand(1);

  auto prime_check = CLI::Validator(
      [](std::string& s) -> std::string {
        try {
          if (is_prime(std::stoul(s))) return {};
        } catch (const std::exception&) {
        }
        return s + " is not a prime";
      },
      "PRIME");
  auto formats = CLI::IsMember({"text", "structured", "json", "dot"});

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("quiver", o.quiver, "quiver file")->required();
    sub->add_option("--format", o.format, "output format")->check(formats);
  };
  auto add_bound = [&](CLI::App* sub) {
    sub->add_option("--dim-bound", o.dim_bound, "largest rank allowed in the rigid-object pool")
        ->check(CLI::PositiveNumber);
  };

  auto* check = app.add_subcommand("check", "validate a quiver file");
  add_common(check);

  auto* ext = app.add_subcommand("ext", "Ext^1 between two representations");
  auto* hom = app.add_subcommand("hom", "Hom between two representations");
  for (auto* sub : {ext, hom}) {
    add_common(sub);
    sub->add_option("reps", o.reps, "representation files or P<i>, I<i>, S<i>")->required()->expected(2);
    sub->add_option("--prime", o.primes, "reduce mod this prime (repeatable)")->check(prime_check);
  }

  auto* tau_sub = app.add_subcommand("tau", "AR translate of an exceptional lattice");
  add_common(tau_sub);
  tau_sub->add_option("rep", o.reps, "representation file or P<i>, I<i>, S<i>")->required()->expected(1);
  tau_sub->add_option("--power", o.power, "apply tau this many times (negative: tau^-1)");

  auto* mut = app.add_subcommand("mutate", "mutate a cluster-tilting object");
  add_common(mut);
  mut->add_option("cluster", o.cluster, "summands separated by ';': P<i>, I<i>, S<i>, SP<i> or (d1,...,dn)")
      ->required();
  mut->add_option("position", o.position, "summand to replace, 1-based");
  mut->add_flag("--interactive", o.interactive, "read positions from standard input");
  add_bound(mut);

  auto* graph = app.add_subcommand("graph", "exchange graph from the projective cluster");
  add_common(graph);
  add_bound(graph);
  graph->add_option("--max-nodes", o.max_nodes, "stop after this many nodes")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the invariant suite on the rigid-object pool");
  add_common(verify);
  add_bound(verify);
  verify->add_option("--prime", o.primes, "primes for the reduction check (repeatable)")->check(prime_check);
  verify->add_option("--rep", o.reps, "extra representation files to check (repeatable)");

  auto* pool = app.add_subcommand("pool", "list the rigid-object pool");
  add_common(pool);
  add_bound(pool);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }
  if (o.format == "json") o.format = "structured";
  if (o.format == "dot" && !graph->parsed()) {
    err << "usage error: --format dot is only available for graph\n";
    return 2;
  }

  Runner r(o, in, out);
  try {
    if (check->parsed()) return r.check();
    if (ext->parsed()) return r.hom_or_ext(true);
    if (hom->parsed()) return r.hom_or_ext(false);
    if (tau_sub->parsed()) return r.tau_cmd();
    if (mut->parsed()) return r.mutate_cmd();
    if (graph->parsed()) return r.graph_cmd();
    if (verify->parsed()) return r.verify_cmd();
    if (pool->parsed()) return r.pool_cmd();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << error_name(e) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace clusterforge
