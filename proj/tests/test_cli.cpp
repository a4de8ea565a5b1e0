#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "clusterforge/cli.hpp"
#include "clusterforge/io.hpp"
#include "doctest.h"

using namespace clusterforge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "clusterforge");
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct Files {
  fs::path dir;
  Files() {
    dir = fs::temp_directory_path() / ("cf_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Files() { fs::remove_all(dir); }
  std::string put(const std::string& name, const std::string& text) {
    std::ofstream(dir / name) << text;
    return (dir / name).string();
  }
};

const char* kA2 = "clusterforge/1\nvertices: 2\narrows: [[1,2]]\n";
const char* kA3 = "clusterforge/1\nvertices: 3\narrows: [[1,2],[2,3]]\n";
const char* kKron = "clusterforge/1\nvertices: 2\narrows: [[1,2],[1,2]]\n";

}  // namespace

TEST_CASE("quiver file round trip and errors") {
  Quiver q = parse_quiver("clusterforge/1\n# comment\nvertices: 3\narrows: [[1,2], [3, 2]]  # trailing\n");
  CHECK(q.vertex_count() == 3);
  CHECK(q.arrow_count() == 2);
  CHECK(parse_quiver(format_quiver(q)) == q);

  auto line_of = [](const std::string& text) {
    try {
      parse_quiver(text, "f");
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("vertices: 2\n") == 1);
  CHECK(line_of("clusterforge/1\nvertices: 2\narrows: [[1,2]\n") == 3);
  CHECK(line_of("clusterforge/1\nvertices: 2\nvertices: 2\n") == 3);
  CHECK(line_of("clusterforge/1\nvertices: 2\narrows: [[1,3]]\n") == 3);
  CHECK(line_of("clusterforge/1\nvertices: 0\n") == 2);
  CHECK_THROWS_AS(validate(parse_quiver("clusterforge/1\nvertices: 2\narrows: [[1,2],[2,1]]\n")), CyclicQuiver);
}

TEST_CASE("representation file round trip") {
  Quiver q = parse_quiver(kA2);
  const std::string text =
      "clusterforge/1\nvertices: 2\narrows: [[1,2]]\ngenerators: [1,1]\nrelations 2: [[2]]\naction 1: [[1]]\n";
  ZRep m = parse_rep(text);
  CHECK(m.generators(1) == 1);
  CHECK(m.generators(2) == 1);
  ZRep back = parse_rep(format_rep(m));
  CHECK(back.rank_vector() == m.rank_vector());
  CHECK(ext1_group(back, back).to_string() == ext1_group(m, m).to_string());

  ZRep big = parse_rep("clusterforge/1\ngenerators: [1,1]\naction 1: [[123456789012345678901234567890]]\n", "b", &q);
  CHECK(big.action(0)(0, 0) == Integer("123456789012345678901234567890"));

  CHECK_THROWS_AS(parse_rep("clusterforge/1\ngenerators: [1,1]\n"), ParseError);
  CHECK_THROWS_AS(parse_rep("clusterforge/1\ngenerators: [1,1]\naction 2: [[1]]\n", "x", &q), ParseError);
  CHECK_THROWS_AS(parse_rep("clusterforge/1\ngenerators: [1,1]\naction 1: [[1,2]]\n", "x", &q), ParseError);
  CHECK_THROWS_AS(parse_rep("clusterforge/1\ngenerators: [1,-1]\n", "x", &q), ParseError);

  CHECK(resolve_rep("P1", q).rank_vector() == IntVector{1, 1});
  CHECK(resolve_rep("I2", q).rank_vector() == IntVector{1, 1});
  CHECK(resolve_rep("S2", q).rank_vector() == IntVector{0, 1});
  CHECK_THROWS_AS(resolve_rep("S3", q), std::invalid_argument);
}

TEST_CASE("check") {
  Files f;
  auto ok = run({"check", f.put("a2.q", kA2)});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("type: A2") != std::string::npos);

  auto cyc = run({"check", f.put("c.q", "clusterforge/1\nvertices: 2\narrows: [[1,2],[2,1]]\n")});
  CHECK(cyc.code == 1);
  CHECK(cyc.out.find("oriented cycle") != std::string::npos);

  auto bad = run({"check", f.put("b.q", "clusterforge/1\nvertices: 2\nnonsense\n")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("b.q:3") != std::string::npos);

  CHECK(run({"check", (f.dir / "missing.q").string()}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("ext and hom") {
  Files f;
  auto a2 = f.put("a2.q", kA2);
  auto tors = f.put("t.rep", "clusterforge/1\nquiver: a2.q\ngenerators: [1,0]\nrelations 1: [[2]]\n");
  CHECK(run({"ext", a2, tors, tors}).out == "Z/2\n");
  CHECK(run({"ext", a2, "P1", "P1"}).out == "0\n");
  CHECK(run({"ext", a2, "S1", "S2"}).out == "Z^1\n");
  CHECK(run({"hom", a2, "P2", "P1"}).out == "Z^1\n");
  auto mod2 = run({"ext", a2, "S1", "S2", "--prime", "2", "--prime", "3"});
  CHECK(mod2.code == 0);
  CHECK(mod2.out == "F_2: dim Ext^1 = 1\nF_3: dim Ext^1 = 1\n");
  CHECK(run({"ext", a2, "S1", "S2", "--prime", "4"}).code == 2);
  CHECK(run({"ext", a2, "S1"}).code == 2);
  auto js = run({"ext", a2, tors, tors, "--format", "structured"});
  CHECK(js.out.find("\"torsion\"") != std::string::npos);
}

TEST_CASE("tau") {
  Files f;
  auto a2 = f.put("a2.q", kA2);
  auto s1 = run({"tau", a2, "S1"});
  CHECK(s1.code == 0);
  CHECK(parse_rep(s1.out).rank_vector() == IntVector{0, 1});

  auto p = run({"tau", a2, "P1"});
  CHECK(p.code == 1);
  CHECK(p.err.find("IsProjective") != std::string::npos);

  auto t = f.put("tau_s1.rep", s1.out);
  auto back = run({"tau", a2, t, "--power", "-1"});
  CHECK(back.code == 0);
  CHECK(are_isomorphic_exceptional(parse_rep(back.out), resolve_rep("S1", parse_quiver(kA2))));
}

TEST_CASE("mutate") {
  Files f;
  auto a2 = f.put("a2.q", kA2);
  auto once = run({"mutate", a2, "P1;P2", "2"});
  CHECK(once.code == 0);
  CHECK(once.out.find("result: {(1,1), (1,0)}") != std::string::npos);
  CHECK(once.out.find("exchange triangles") != std::string::npos);

  auto twice = run({"mutate", a2, "(1,1);(1,0)", "2"});
  CHECK(twice.out.find("result: {(1,1), (0,1)}") != std::string::npos);

  CHECK(run({"mutate", a2, "P1;P2", "3"}).code == 2);
  CHECK(run({"mutate", a2, "P1;P2", "0"}).code == 2);
  CHECK(run({"mutate", a2, "P1;X9", "1"}).code == 2);
  auto not_tilting = run({"mutate", a2, "P1;S1;P2", "1"});
  CHECK(not_tilting.code == 1);
  CHECK(run({"mutate", a2, "P1", "1"}).code == 1);

  auto inter = run({"mutate", a2, "P1;P2", "--interactive"}, "2\n7\n2\nq\n");
  CHECK(inter.code == 0);
  CHECK(inter.out.find("cluster: {(1,1), (1,0)}") != std::string::npos);
  CHECK(inter.out.find("enter a position") != std::string::npos);
  CHECK(inter.out.find("Ext^1_C = Z^1") != std::string::npos);
}

TEST_CASE("graph") {
  Files f;
  auto dot = run({"graph", f.put("a2.q", kA2), "--format", "dot"});
  CHECK(dot.code == 0);
  CHECK(dot.out.rfind("graph exchange {", 0) == 0);
  CHECK(std::count(dot.out.begin(), dot.out.end(), '\n') == 12);  // header, 5 nodes, 5 edges, brace

  auto a3 = run({"graph", f.put("a3.q", kA3)});
  CHECK(a3.out.rfind("nodes: 14\nedges: 21\n", 0) == 0);

  auto kr = run({"graph", f.put("k.q", kKron), "--max-nodes", "8", "--format", "dot"});
  CHECK(kr.code == 0);
  CHECK(kr.out.find("truncated") != std::string::npos);

  auto js = run({"graph", f.put("a2b.q", kA2), "--format", "json"});
  CHECK(js.out.find("\"truncated\": false") != std::string::npos);

  CHECK(run({"check", f.put("a2c.q", kA2), "--format", "dot"}).code == 2);
}

TEST_CASE("determinism") {
  Files f;
  auto a3 = f.put("a3.q", kA3);
  CHECK(run({"graph", a3, "--format", "structured"}).out == run({"graph", a3, "--format", "structured"}).out);
}

TEST_CASE("verify") {
  Files f;
  auto a2 = f.put("a2.q", kA2);
  auto ok = run({"verify", a2});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("FAIL") == std::string::npos);

  auto a3 = run({"verify", f.put("a3.q", kA3), "--prime", "2", "--prime", "3", "--prime", "5"});
  CHECK(a3.code == 0);
  CHECK(a3.out.find("PASS bijection mod 5") != std::string::npos);

  auto good = f.put("good.rep", "clusterforge/1\nquiver: a2.q\ngenerators: [1,1]\naction 1: [[1]]\n");
  CHECK(run({"verify", a2, "--rep", good}).code == 0);

  // multiplication by 2 along the arrow: Ext^1(M,M) = Z/2
  auto corrupt = f.put("bad.rep", "clusterforge/1\nquiver: a2.q\ngenerators: [1,1]\naction 1: [[2]]\n");
  auto bad = run({"verify", a2, "--rep", corrupt});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("FAIL input representations") != std::string::npos);
}
