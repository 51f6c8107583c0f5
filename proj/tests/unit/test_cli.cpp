#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "orderflow/io.hpp"
#include "orderflow/patterns.hpp"

using namespace orderflow;

namespace {
  struct Run {
    int         code;
    std::string out;
    std::string err;
  };

  Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int                code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
  }

  std::string temp_file(std::string const& name, std::string const& content = "") {
    auto dir = std::filesystem::temp_directory_path() / "orderflow_cli_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / name).string();
    if (!content.empty()) {
      std::ofstream(path) << content;
    }
    return path;
  }

  std::string slurp(std::string const& path) {
    std::ifstream     in(path);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
}  // namespace

TEST_CASE("census writes the face table") {
  auto path = temp_file("census.csv");
  auto r    = run({"census", "--n", "3", "--out", path});
  REQUIRE(r.code == 0);
  CHECK(slurp(path)
        == "dimension,total,realizable\n4,1,1\n3,6,6\n2,13,9\n1,13,2\n0,6,0\n");
}

TEST_CASE("drift loop reports the partially driftless loop") {
  auto file = temp_file("partial.json", R"({"n":3,"edges":["2134","1342","2314","3241","2314"]})");
  auto r    = run({"drift", "loop", "--path", file});
  REQUIRE(r.code == 0);
  auto j = io::Json::parse(r.out);
  CHECK(j["class"] == "partially_driftless");
  CHECK(j["diagonal"] == "(+,0,+)");
}

TEST_CASE("exact distribution of doubling") {
  auto path = temp_file("d3.csv");
  REQUIRE(run({"exact", "--map", "doubling", "--n", "3", "--out", path}).code == 0);
  std::ifstream in(path);
  auto          mu = read_distribution_csv(in);
  CHECK(mu.masses().size() == 6);
  CHECK(mu.mass(Perm::parse("123")) == Rational(1, 4));
  CHECK(mu.mass(Perm::parse("213")) == Rational(1, 12));
  auto f = run({"--float", "exact", "--map", "rotation:3/10", "--n", "3"});
  CHECK(f.out.find("123,0.4") != std::string::npos);
}

TEST_CASE("randomized commands need a seed and are deterministic") {
  CHECK(run({"simulate", "--map", "tent", "--n", "3", "--samples", "500"}).code == 2);
  auto a = run({"simulate", "--map", "tent", "--n", "3", "--samples", "500", "--seed", "4"});
  auto b = run({"--serial", "simulate", "--map", "tent", "--n", "3", "--samples", "500", "--seed", "4"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(run({"entropy", "--map", "tent", "--samples", "100"}).code == 2);
}

TEST_CASE("usage and domain errors map to exit codes") {
  CHECK(run({}).code == 2);
  CHECK(run({"census", "--n", "3", "--bogus"}).code == 2);
  CHECK(run({"exact", "--map", "nosuchmap", "--n", "3"}).code == 2);
  auto r = run({"exact", "--map", "logistic", "--n", "3"});
  CHECK(r.code == 1);
  CHECK(r.err.find("NotPiecewiseAffine") != std::string::npos);
  auto vertex = temp_file("vertex.json", R"({"n":3,"weights":{"123":"1"}})");
  CHECK(run({"realize", "--flow", vertex}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("realize then exact closes the loop") {
  auto flow = temp_file("uniform.json", io::to_json(ExactDistribution::uniform(3)).dump());
  auto map  = temp_file("realized.json");
  auto r    = run({"realize", "--flow", flow, "--tol", "0.05", "--out", map});
  REQUIRE(r.code == 0);
  CHECK(io::Json::parse(r.out)["deviation"] == "1/246");
  auto e = run({"exact", "--map", map, "--n", "3"});
  REQUIRE(e.code == 0);
  std::istringstream in(e.out);
  auto               mu = read_distribution_csv(in);
  CHECK(sup_distance(mu, ExactDistribution::uniform(3)) <= 0.05);
}

TEST_CASE("validate names the problem") {
  auto neg = temp_file("neg.json", R"({"n":2,"weights":{"12":"-1/2","21":"3/2"}})");
  auto r   = run({"validate", neg});
  CHECK(r.code == 1);
  CHECK(r.out.find("/weights/12") != std::string::npos);
  auto path = temp_file("bad_path.json", R"({"n":2,"edges":["132","123"]})");
  auto p    = run({"validate", path, "--kind", "path"});
  CHECK(p.code == 1);
  CHECK(p.out.find("132 ends at 21 but 123 starts at 12") != std::string::npos);
  auto good = temp_file("good.json", R"({"n":2,"weights":{"12":0.5,"21":0.5}})");
  CHECK(run({"validate", good}).out == "ok (flow)\n");
}

TEST_CASE("digraph, poset, lifts and cantor subcommands") {
  auto g = run({"digraph", "build", "--n", "3", "--vertex", "231"});
  REQUIRE(g.code == 0);
  auto j = io::Json::parse(g.out);
  CHECK(j["edges"] == 24);
  CHECK(j["out_edges"].size() == 4);
  CHECK(run({"digraph", "export", "--n", "2"}).out.rfind("digraph", 0) == 0);
  CHECK(run({"poset", "query", "--edges", "2134,1342,2314,3241,2314", "-i", "2", "-j", "7"}).out
        == "incomparable\n");
  CHECK(run({"poset", "query", "--edges", "2134,1342,2314,3241,2314", "-i", "1", "-j", "6"}).out
        == "<=\n");
  CHECK(run({"lifts", "count", "--edges", "132,321,213", "--brute"}).out == "4\n");
  auto v = run({"cantor", "verify", "--depth", "2", "--scale", "10", "--samples", "20000",
                "--seed", "3"});
  CHECK(v.code == 0);
  CHECK(io::Json::parse(v.out)["pass"] == true);
  CHECK(run({"cantor", "build", "--depth", "3"}).code == 0);
}
