#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "orderflow/analysis.hpp"
#include "orderflow/cantor.hpp"
#include "orderflow/digraph.hpp"
#include "orderflow/drift.hpp"
#include "orderflow/error.hpp"
#include "orderflow/flows.hpp"
#include "orderflow/intervalmap.hpp"
#include "orderflow/io.hpp"
#include "orderflow/pathposet.hpp"
#include "orderflow/patterns.hpp"

namespace orderflow::cli {

  namespace {
    using io::Json;

    char const* const kFormats = R"(File formats
  subgraph  {"n": 2, "edges": ["132", "321", "213"]}
  path      same shape; consecutive edges must share their n-window
  flow      {"n": 3, "weights": {"132": "1/3", "321": "1/3", "213": "1/3"}}
            weights are rational strings or JSON numbers, summing to 1
  map       {"name": "f", "pieces": [{"lo": "0", "hi": "1/2", "a": "2", "b": "0"}, ...]}
            each piece [lo, hi) maps x to a x + b; an optional "tail": "sqrt2-1"
            rotates the piece's image by that fraction of its length
  CSV       pattern,mass rows, masses exact rationals (or decimals with --float)
Maps are given with --map as a built-in (doubling, tent, logistic,
rotation:3/10, rotation:sqrt2-1) or as a path to a map JSON file.
ORDERFLOW_CAP lowers the permutation length cap (default 12).)";

    // A failure in how the command was invoked rather than in the mathematics.
    struct UsageError : std::runtime_error {
      using std::runtime_error::runtime_error;
    };

    struct Options {
      bool   floating = false;
      bool   serial   = false;
      std::string out_path;

      Execution exec() const {
        return serial ? Execution::serial : Execution::parallel;
      }
    };

    std::vector<Perm> parse_edge_list(std::string const& text) {
      std::vector<Perm> out;
      std::string       item;
      std::stringstream in(text);
      while (std::getline(in, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
        if (!item.empty()) {
          out.push_back(Perm::parse(item));
        }
      }
      if (out.empty()) {
        throw UsageError("empty edge list");
      }
      return out;
    }

    DiPath load_path(std::string const& file, std::string const& edges) {
      if (!file.empty() && !edges.empty()) {
        throw UsageError("give either --path or --edges, not both");
      }
      if (!file.empty()) {
        return io::path_from_json(io::read_json_file(file));
      }
      if (edges.empty()) {
        throw UsageError("a path is required (--path FILE or --edges LIST)");
      }
      return DiPath(parse_edge_list(edges));
    }

    Subgraph load_subgraph(std::string const& file, std::string const& edges) {
      if (!file.empty() && !edges.empty()) {
        throw UsageError("give either --subgraph or --edges, not both");
      }
      if (!file.empty()) {
        return io::subgraph_from_json(io::read_json_file(file));
      }
      if (edges.empty()) {
        throw UsageError("a subgraph is required (--subgraph FILE or --edges LIST)");
      }
      auto     list = parse_edge_list(edges);
      Subgraph h(list.front().size() - 1);
      for (auto const& e : list) {
        h.insert(e);
      }
      return h;
    }

    IntervalMap load_map(std::string const& spec) {
      if (spec.empty()) {
        throw UsageError("--map is required");
      }
      if (std::filesystem::exists(spec)) {
        return io::map_from_json(io::read_json_file(spec));
      }
      auto        colon = spec.find(':');
      std::string name  = spec.substr(0, colon);
      std::string param = colon == std::string::npos ? "" : spec.substr(colon + 1);
      return builtin(name, param);
    }

    Json number(Rational const& q, bool floating) {
      if (floating) {
        return q.get_d();
      }
      return orderflow::to_string(q);
    }

    // Writes an artifact either to --out or to stdout.
    void emit(Options const& opt, std::ostream& out, std::string const& text) {
      if (opt.out_path.empty()) {
        out << text;
        return;
      }
      std::ofstream f(opt.out_path);
      if (!f) {
        throw Error(ErrorKind::invalid_argument, "cannot write " + opt.out_path);
      }
      f << text;
      out << "wrote " << opt.out_path << "\n";
    }

    std::string dump(Json const& j) {
      return j.dump(2) + "\n";
    }

    std::string distribution_csv(ExactDistribution const& mu, bool floating) {
      std::ostringstream s;
      if (floating) {
        write_distribution_csv(s, to_float(mu));
      } else {
        write_distribution_csv(s, mu);
      }
      return s.str();
    }

    // Exact frequencies of an empirical histogram: count / kept samples.
    ExactDistribution frequencies(PatternReport const& r) {
      std::uint64_t kept = r.samples - r.discarded;
      if (kept == 0) {
        throw Error(ErrorKind::degenerate_orbit, "every sample had a tied orbit");
      }
      std::map<Perm, Rational> m;
      for (auto const& [p, x] : r.distribution.masses()) {
        auto count = static_cast<unsigned long>(std::llround(x * static_cast<double>(kept)));
        m[p] = Rational(count, static_cast<unsigned long>(kept));
        m[p].canonicalize();
      }
      return ExactDistribution(r.n, std::move(m));
    }

    std::vector<ExactDistribution> load_targets(std::vector<std::string> const& files,
                                                int depth) {
      if (files.empty()) {
        return uniform_targets(depth);
      }
      std::vector<ExactDistribution> out;
      for (auto const& f : files) {
        out.push_back(read_distribution_csv_file(f));
      }
      return out;
    }

    int exit_code(ErrorKind k) {
      switch (k) {
        case ErrorKind::parse_error:
        case ErrorKind::unknown_builtin:
          return 2;
        default:
          return 1;
      }
    }
  }  // namespace

  int dispatch(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Order patterns of interval maps: permutation digraphs, drift, flow polytopes "
                 "and realization by measure-preserving maps.",
                 "orderflow"};
    app.footer(kFormats);
    app.require_subcommand(1);
    app.fallthrough();

    Options                  opt;
    std::function<int()>     action;
    app.add_flag("--float", opt.floating, "print floating-point numbers instead of exact ones");
    app.add_flag("--serial", opt.serial, "use the serial reference kernels");

    auto out_option = [&](CLI::App* sub) {
      sub->add_option("--out", opt.out_path, "write the artifact here instead of stdout");
    };

    // Inputs shared by several subcommands.
    int                      n = 0;
    std::string              path_file, edges, subgraph_file, map_spec, flow_file;
    std::uint64_t            samples = 0, seed = 0;
    std::vector<std::string> target_files;
    std::string              vertex, format = "dot", file, kind = "auto";
    int                      max_dim = -1, n_max = 6, m_max = 6, depth = 3, scale = 16;
    int                      i = 0, k = 0;
    bool                     brute = false;
    double                   tol   = 0.05;

    // digraph
    auto* digraph = app.add_subcommand("digraph", "the permutation digraph G_n");
    digraph->require_subcommand(1);
    {
      auto* build = digraph->add_subcommand("build", "summary of G_n, or the edges at one vertex");
      build->add_option("--n", n, "vertex length")->required();
      build->add_option("--vertex", vertex, "list the in- and out-edges of this vertex");
      out_option(build);
      build->callback([&] {
        action = [&] {
          auto g = PermDigraph::build(n);
          Json j{{"n", n}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
          if (!vertex.empty()) {
            Perm v = Perm::parse(vertex);
            if (v.size() != n) {
              throw Error(ErrorKind::length_mismatch, "vertex must have length " + std::to_string(n));
            }
            j["vertex"]    = v.to_string();
            j["out_edges"] = Json::array();
            j["in_edges"]  = Json::array();
            for (auto const& e : g.out_edges(v)) {
              j["out_edges"].push_back(e.to_string());
            }
            for (auto const& e : g.in_edges(v)) {
              j["in_edges"].push_back(e.to_string());
            }
          }
          emit(opt, out, dump(j));
          return 0;
        };
      });
      auto*       exp    = digraph->add_subcommand("export", "G_n or a subgraph as DOT or JSON");
      exp->add_option("--n", n, "export all of G_n");
      exp->add_option("--subgraph", subgraph_file, "export this subgraph instead");
      exp->add_option("--format", format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
      out_option(exp);
      exp->callback([&] {
        action = [&] {
          Subgraph h = subgraph_file.empty() ? (n > 0 ? Subgraph::full(n)
                                                      : throw UsageError("--n or --subgraph is required"))
                                             : load_subgraph(subgraph_file, "");
          emit(opt, out, format == "dot" ? export_dot(h) : dump(io::to_json(h)));
          return 0;
        };
      });
    }

    // poset
    auto* poset = app.add_subcommand("poset", "the poset Q_p of a path");
    poset->require_subcommand(1);
    {
      auto* build = poset->add_subcommand("build", "covering relations of Q_p (1-based)");
      build->add_option("--path", path_file, "path JSON file");
      build->add_option("--edges", edges, "comma-separated edge list");
      out_option(build);
      build->callback([&] {
        action = [&] {
          DiPath p = load_path(path_file, edges);
          auto   q = build_poset(p);
          Json   j{{"elements", q.size()}, {"covering", Json::array()}};
          for (auto [a, b] : q.covering_pairs()) {
            j["covering"].push_back(Json::array({a + 1, b + 1}));
          }
          emit(opt, out, dump(j));
          return 0;
        };
      });
      auto* query = poset->add_subcommand("query", "how x_i and x_j compare in every lift");
      query->add_option("--path", path_file, "path JSON file");
      query->add_option("--edges", edges, "comma-separated edge list");
      query->add_option("-i,--i", i, "first element (1-based)")->required();
      query->add_option("-j,--j", k, "second element (1-based)")->required();
      query->callback([&] {
        action = [&] {
          DiPath p = load_path(path_file, edges);
          if (i < 1 || k < 1 || i > p.element_count() || k > p.element_count()) {
            throw UsageError("element indices must lie in 1.." + std::to_string(p.element_count()));
          }
          out << to_string(common_comparability(p, i - 1, k - 1)) << "\n";
          return 0;
        };
      });
    }

    // lifts
    auto* lifts_cmd = app.add_subcommand("lifts", "permutations projecting onto a path");
    lifts_cmd->require_subcommand(1);
    {
      auto* enumerate = lifts_cmd->add_subcommand("enumerate", "list every lift");
      enumerate->add_option("--path", path_file, "path JSON file");
      enumerate->add_option("--edges", edges, "comma-separated edge list");
      out_option(enumerate);
      enumerate->callback([&] {
        action = [&] {
          DiPath             p = load_path(path_file, edges);
          std::ostringstream s;
          for (auto const& sigma : lifts(p, opt.exec())) {
            s << sigma.to_string() << "\n";
          }
          emit(opt, out, s.str());
          return 0;
        };
      });
      auto* count = lifts_cmd->add_subcommand("count", "count lifts as linear extensions of Q_p");
      count->add_option("--path", path_file, "path JSON file");
      count->add_option("--edges", edges, "comma-separated edge list");
      count->add_flag("--brute", brute, "also count by scanning S_m and compare");
      count->callback([&] {
        action = [&] {
          DiPath p = load_path(path_file, edges);
          BigInt c = count_linear_extensions(build_poset(p));
          out << c.get_str() << "\n";
          if (brute) {
            auto b = lifts(p, opt.exec()).size();
            if (BigInt(static_cast<unsigned long>(b)) != c) {
              err << "brute-force count " << b << " disagrees\n";
              return 1;
            }
          }
          return 0;
        };
      });
    }

    // drift
    auto* drift = app.add_subcommand("drift", "drift of loops and subgraphs");
    drift->require_subcommand(1);
    {
      auto* loop = drift->add_subcommand("loop", "drift matrix and class of a loop");
      loop->add_option("--path", path_file, "loop JSON file");
      loop->add_option("--edges", edges, "comma-separated edge list");
      loop->callback([&] {
        action = [&] {
          out << dump(io::loop_report(load_path(path_file, edges)));
          return 0;
        };
      });
      auto* sub = drift->add_subcommand("subgraph", "whether a subgraph drifts, with a witness");
      sub->add_option("--subgraph", subgraph_file, "subgraph JSON file");
      sub->add_option("--edges", edges, "comma-separated edge list");
      sub->callback([&] {
        action = [&] {
          out << dump(io::to_json(subgraph_drifts(load_subgraph(subgraph_file, edges), opt.exec())));
          return 0;
        };
      });
      auto* synth = drift->add_subcommand("synthesize",
                                          "a totally driftless loop covering a driftless face");
      synth->add_option("--subgraph", subgraph_file, "subgraph JSON file");
      synth->add_option("--edges", edges, "comma-separated edge list");
      out_option(synth);
      synth->callback([&] {
        action = [&] {
          auto loop = synthesize_totally_driftless_loop(load_subgraph(subgraph_file, edges),
                                                        opt.exec());
          emit(opt, out, dump(io::to_json(loop)));
          return 0;
        };
      });
    }

    // census
    {
      auto* census_cmd = app.add_subcommand("census", "realizable faces of P_n by dimension");
      census_cmd->add_option("--n", n, "pattern length (faces of P_n live in G_{n-1})")->required();
      census_cmd->add_option("--max-dim", max_dim, "only faces up to this dimension");
      out_option(census_cmd);
      census_cmd->callback([&, census_cmd] {
        action = [&, census_cmd] {
          std::optional<int> limit;
          if (census_cmd->count("--max-dim")) {
            limit = max_dim;
          }
          std::ostringstream s;
          write_census_csv(s, census(n, limit, opt.exec()));
          emit(opt, out, s.str());
          return 0;
        };
      });
    }

    // realize
    {
      auto*  realize = app.add_subcommand("realize", "a measure-preserving map approximating a flow");
      realize->add_option("--flow", flow_file, "flow JSON file")->required();
      realize->add_option("--tol", tol, "sup-norm tolerance")->check(CLI::Range(1e-9, 1.0));
      out_option(realize);
      realize->callback([&] {
        action = [&] {
          Flow mu = io::flow_from_json(io::read_json_file(flow_file));
          auto r  = realize_flow(mu, tol, opt.exec());
          Json report{{"deviation", number(r.deviation, opt.floating)},
                      {"pieces", r.map.pieces().size()},
                      {"components", Json::array()}};
          for (auto const& c : r.components) {
            report["components"].push_back({{"edges", c.face.edge_count()},
                                            {"mass", number(c.mass, opt.floating)},
                                            {"walk_length", c.walk_length},
                                            {"driftless_length", c.driftless_length},
                                            {"repetitions", c.repetitions},
                                            {"loop_length", c.loop_length}});
          }
          if (opt.out_path.empty()) {
            report["map"] = io::to_json(r.map);
            out << dump(report);
          } else {
            io::write_json_file(opt.out_path, io::to_json(r.map));
            out << dump(report);
          }
          return 0;
        };
      });
    }

    // simulate
    {
      auto* simulate = app.add_subcommand("simulate", "empirical pattern distribution of a map");
      simulate->add_option("--map", map_spec, "built-in name or map JSON file")->required();
      simulate->add_option("--n", n, "pattern length")->required();
      simulate->add_option("--samples", samples, "number of sample points")->required();
      simulate->add_option("--seed", seed, "random seed")->required();
      out_option(simulate);
      simulate->callback([&] {
        action = [&] {
          auto r = empirical_distribution(load_map(map_spec), n, samples, seed, opt.exec());
          emit(opt, out, distribution_csv(frequencies(r), opt.floating));
          if (r.discarded) {
            err << r.discarded << " samples with tied orbits discarded\n";
          }
          return 0;
        };
      });
    }

    // exact
    {
      auto* exact = app.add_subcommand("exact", "exact pattern distribution of a piecewise-affine map");
      exact->add_option("--map", map_spec, "built-in name or map JSON file")->required();
      exact->add_option("--n", n, "pattern length")->required();
      out_option(exact);
      exact->callback([&] {
        action = [&] {
          auto r = exact_distribution(load_map(map_spec), n);
          emit(opt, out, distribution_csv(*r.exact, opt.floating));
          return 0;
        };
      });
    }

    // Options for commands able to run exactly or by sampling.
    auto mode_options = [&](CLI::App* sub) {
      sub->add_option("--samples", samples, "estimate by sampling instead of exactly");
      sub->add_option("--seed", seed, "random seed (required with --samples)");
    };
    auto mode_of = [&](CLI::App* sub) {
      if (sub->count("--samples") == 0) {
        if (sub->count("--seed")) {
          throw UsageError("--seed only applies with --samples");
        }
        return Mode::exact_mode();
      }
      if (sub->count("--seed") == 0) {
        throw UsageError("--samples requires --seed");
      }
      return Mode::empirical(samples, seed, opt.exec());
    };

    // entropy
    {
      auto* entropy = app.add_subcommand("entropy", "table of log|sigma_n| / (n - 1)");
      entropy->add_option("--map", map_spec, "built-in name or map JSON file")->required();
      entropy->add_option("--n-max", n_max, "largest pattern length (<= 10)");
      mode_options(entropy);
      out_option(entropy);
      entropy->callback([&, entropy] {
        action = [&, entropy] {
          Mode               mode = mode_of(entropy);
          std::ostringstream s;
          s << std::left << std::setw(4) << "n" << std::setw(12) << "count" << "estimate\n";
          for (auto const& row : entropy_estimate(load_map(map_spec), n_max, mode)) {
            s << std::left << std::setw(4) << row.n << std::setw(12) << row.count << std::fixed
              << std::setprecision(6) << row.estimate << "\n";
          }
          emit(opt, out, s.str());
          return 0;
        };
      });
    }

    // forbidden
    {
      auto* forbidden = app.add_subcommand("forbidden", "patterns a map never realizes");
      forbidden->add_option("--map", map_spec, "built-in name or map JSON file")->required();
      forbidden->add_option("--n", n, "pattern length")->required();
      mode_options(forbidden);
      forbidden->callback([&, forbidden] {
        action = [&, forbidden] {
          auto r = forbidden_patterns(load_map(map_spec), n, mode_of(forbidden));
          Json j{{"n", r.n}, {"forbidden", Json::array()}, {"basic", Json::array()}};
          for (auto const& p : r.forbidden) {
            j["forbidden"].push_back(p.to_string());
          }
          for (auto const& p : r.basic) {
            j["basic"].push_back(p.to_string());
          }
          out << dump(j);
          return 0;
        };
      });
    }

    // exclusion
    {
      auto* exclusion = app.add_subcommand(
          "exclusion", "test whether realized patterns are the lifts of paths in H_n(f)");
      exclusion->add_option("--map", map_spec, "built-in name or map JSON file")->required();
      exclusion->add_option("--n", n, "exclusion type to test")->required();
      exclusion->add_option("--m-max", m_max, "longest pattern length compared (<= 8)");
      exclusion->callback([&] {
        action = [&] {
          auto verdicts = exclusion_type_test(load_map(map_spec), n, m_max, opt.exec());
          bool all      = true;
          Json rows     = Json::array();
          for (auto const& v : verdicts) {
            all = all && v.equal;
            Json missing = Json::array(), extra = Json::array();
            for (auto const& p : v.missing) {
              missing.push_back(p.to_string());
            }
            for (auto const& p : v.extra) {
              extra.push_back(p.to_string());
            }
            rows.push_back({{"m", v.m}, {"equal", v.equal}, {"missing", missing}, {"extra", extra}});
          }
          // Agreement up to m_max says nothing about longer patterns.
          Json j{{"n", n},
                 {"m_max", m_max},
                 {"verdict", all ? "consistent up to m_max (partial)" : "not of this exclusion type"},
                 {"levels", rows}};
          out << dump(j);
          return 0;
        };
      });
    }

    // cantor
    auto* cantor = app.add_subcommand("cantor", "finite-depth construction for compatible targets");
    cantor->require_subcommand(1);
    {
      auto* build = cantor->add_subcommand("build", "interval and separator trees");
      build->add_option("--depth", depth, "tree depth N");
      build->add_option("--target", target_files,
                        "distribution CSV for lengths 1..N, in order (default uniform)");
      out_option(build);
      build->callback([&] {
        action = [&] {
          auto t = IntervalTree::build(load_targets(target_files, depth));
          auto s = SeparatorTree::build(t.depth());
          Json problems = Json::array();
          for (auto const& p : t.check_invariants()) {
            problems.push_back(p);
          }
          for (auto const& p : s.check_order_property()) {
            problems.push_back(p);
          }
          Json j{{"I", io::to_json(t)}, {"J", io::to_json(s)}, {"problems", problems}};
          emit(opt, out, dump(j));
          return problems.empty() ? 0 : 1;
        };
      });
      auto* verify = cantor->add_subcommand("verify", "assemble the map and sample its patterns");
      verify->add_option("--depth", depth, "tree depth N");
      verify->add_option("--scale", scale, "scale depth M (<= 24)");
      verify->add_option("--target", target_files,
                         "distribution CSV for lengths 1..N, in order (default uniform)");
      verify->add_option("--samples", samples, "number of sample points")->required();
      verify->add_option("--seed", seed, "random seed")->required();
      verify->callback([&] {
        action = [&] {
          auto targets = load_targets(target_files, depth);
          auto t       = IntervalTree::build(targets);
          auto s       = SeparatorTree::build(t.depth());
          auto m       = assemble_truncated_map(t, s, scale);
          auto v       = verify_construction(m, t.targets(), samples, seed);
          Json levels  = Json::array();
          for (auto const& l : v.levels) {
            levels.push_back(
                {{"n", l.n}, {"deviation", l.deviation}, {"bound", l.bound}, {"pass", l.pass}});
          }
          Json j{{"depth", m.depth},
                 {"scale_depth", m.scale_depth},
                 {"pieces", m.map.pieces().size()},
                 {"slope", number(m.slope, opt.floating)},
                 {"uncovered", number(m.uncovered, opt.floating)},
                 {"collision", number(m.collision, opt.floating)},
                 {"samples", v.samples},
                 {"excluded", v.excluded},
                 {"levels", levels},
                 {"pass", v.pass}};
          out << dump(j);
          return v.pass ? 0 : 1;
        };
      });
    }

    // validate
    {
      auto*       validate = app.add_subcommand("validate", "check a file against its schema");
      validate->add_option("file", file, "file to check")->required();
      validate->add_option("--kind", kind, "auto, subgraph, path, flow, map or distribution")
          ->check(CLI::IsMember({"auto", "subgraph", "path", "flow", "map", "distribution"}));
      validate->callback([&] {
        action = [&] {
          auto v = io::validate_file(file, io::parse_format(kind));
          if (v.ok()) {
            out << "ok (" << io::to_string(v.format) << ")\n";
            return 0;
          }
          for (auto const& d : v.diagnostics) {
            out << d << "\n";
          }
          return 1;
        };
      });
    }

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return 0;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (CLI::ParseError const& e) {
      // Help for a subcommand is requested through the subcommand itself.
      if (e.get_exit_code() == 0) {
        out << app.help();
        return 0;
      }
      err << "usage error: " << e.what() << "\n";
      return 2;
    }

    try {
      return action ? action() : 2;
    } catch (UsageError const& e) {
      err << "usage error: " << e.what() << "\n";
      return 2;
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return exit_code(e.kind());
    } catch (std::exception const& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }

}  // namespace orderflow::cli
