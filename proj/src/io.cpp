#include "orderflow/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "orderflow/patterns.hpp"

namespace orderflow::io {

  namespace {
    // Collects problems when validating, throws ParseError on the first
    // problem when importing.
    class Sink {
     public:
      explicit Sink(std::vector<std::string>* diags = nullptr) : diags_(diags) {}

      void report(std::string const& where, std::string const& what) {
        std::string msg = (where.empty() ? std::string("/") : where) + ": " + what;
        if (!diags_) {
          throw Error(ErrorKind::parse_error, msg);
        }
        diags_->push_back(std::move(msg));
      }
      bool collecting() const noexcept {
        return diags_ != nullptr;
      }
      std::size_t count() const noexcept {
        return diags_ ? diags_->size() : 0;
      }

     private:
      std::vector<std::string>* diags_;
    };

    std::string escape_key(std::string const& k) {
      std::string out;
      for (char c : k) {
        if (c == '~') {
          out += "~0";
        } else if (c == '/') {
          out += "~1";
        } else {
          out += c;
        }
      }
      return out;
    }

    std::optional<int> get_n(Json const& j, Sink& sink, int minimum) {
      if (!j.is_object()) {
        sink.report("", "expected a JSON object");
        return std::nullopt;
      }
      if (!j.contains("n")) {
        sink.report("/n", "missing");
        return std::nullopt;
      }
      if (!j["n"].is_number_integer() || j["n"].get<long>() < minimum
          || j["n"].get<long>() > kMaxPermLength) {
        sink.report("/n", "expected an integer between " + std::to_string(minimum) + " and "
                              + std::to_string(kMaxPermLength));
        return std::nullopt;
      }
      return j["n"].get<int>();
    }

    std::optional<Perm> get_perm(Json const& v, int length, std::string const& where,
                                 Sink& sink) {
      if (!v.is_string()) {
        sink.report(where, "expected a permutation string");
        return std::nullopt;
      }
      try {
        Perm p = Perm::parse(v.get<std::string>());
        if (p.size() != length) {
          sink.report(where, "permutation " + p.to_string() + " has length "
                                 + std::to_string(p.size()) + ", expected "
                                 + std::to_string(length));
          return std::nullopt;
        }
        return p;
      } catch (Error const& e) {
        sink.report(where, e.what());
        return std::nullopt;
      }
    }

    std::optional<Perm> get_perm(std::string const& text, int length, std::string const& where,
                                 Sink& sink) {
      return get_perm(Json(text), length, where, sink);
    }

    std::optional<Rational> get_rational(Json const& v, std::string const& where, Sink& sink) {
      try {
        if (v.is_string()) {
          return parse_rational(v.get<std::string>());
        }
        if (v.is_number()) {
          // The shortest decimal text of the number, read exactly.
          return parse_rational(v.dump());
        }
      } catch (Error const& e) {
        sink.report(where, e.what());
        return std::nullopt;
      }
      sink.report(where, "expected a number or a rational string");
      return std::nullopt;
    }

    std::vector<std::optional<Perm>> get_edges(Json const& j, int n, Sink& sink) {
      std::vector<std::optional<Perm>> out;
      if (!j.contains("edges") || !j["edges"].is_array()) {
        sink.report("/edges", "expected an array of permutation strings");
        return out;
      }
      auto const& arr = j["edges"];
      for (std::size_t i = 0; i < arr.size(); ++i) {
        out.push_back(get_perm(arr[i], n + 1, "/edges/" + std::to_string(i), sink));
      }
      return out;
    }

    void check_subgraph(Json const& j, Sink& sink) {
      auto n = get_n(j, sink, 1);
      if (!n) {
        return;
      }
      std::map<Perm, std::size_t> seen;
      auto                        edges = get_edges(j, *n, sink);
      for (std::size_t i = 0; i < edges.size(); ++i) {
        if (edges[i]) {
          auto [it, fresh] = seen.emplace(*edges[i], i);
          if (!fresh) {
            sink.report("/edges/" + std::to_string(i),
                        "duplicate of /edges/" + std::to_string(it->second));
          }
        }
      }
    }

    void check_path(Json const& j, Sink& sink) {
      auto n = get_n(j, sink, 1);
      if (!n) {
        return;
      }
      auto edges = get_edges(j, *n, sink);
      if (edges.empty() && j.contains("edges") && j["edges"].is_array()) {
        sink.report("/edges", "a path needs at least one edge");
      }
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (!edges[i] || !edges[i + 1]) {
          continue;
        }
        Perm out = restrict(*edges[i], Side::tail);
        Perm in  = restrict(*edges[i + 1], Side::head);
        if (out != in) {
          sink.report("/edges/" + std::to_string(i) + " -> /edges/" + std::to_string(i + 1),
                      edges[i]->to_string() + " ends at " + out.to_string() + " but "
                          + edges[i + 1]->to_string() + " starts at " + in.to_string());
        }
      }
    }

    std::map<Perm, Rational> get_weights(Json const& j, int n, Sink& sink) {
      std::map<Perm, Rational> w;
      if (!j.contains("weights") || !j["weights"].is_object()) {
        sink.report("/weights", "expected an object mapping permutations to weights");
        return w;
      }
      for (auto const& [key, value] : j["weights"].items()) {
        std::string where = "/weights/" + escape_key(key);
        auto        p     = get_perm(key, n, where, sink);
        auto        q     = get_rational(value, where, sink);
        if (!p || !q) {
          continue;
        }
        if (sgn(*q) < 0) {
          sink.report(where, "negative weight " + orderflow::to_string(*q) + " on edge " + p->to_string());
          continue;
        }
        w[*p] += *q;
      }
      return w;
    }

    void check_flow(Json const& j, Sink& sink) {
      auto n = get_n(j, sink, 2);
      if (!n) {
        return;
      }
      std::size_t before = sink.count();
      auto        w      = get_weights(j, *n, sink);
      if (sink.count() != before) {
        return;
      }
      Rational total(0);
      std::map<Perm, Rational> balance;
      for (auto const& [e, m] : w) {
        total += m;
        balance[restrict(e, Side::head)] -= m;
        balance[restrict(e, Side::tail)] += m;
      }
      if (total != 1) {
        sink.report("/weights", "weights sum to " + orderflow::to_string(total) + ", expected 1");
      }
      for (auto const& [v, b] : balance) {
        if (sgn(b) != 0) {
          sink.report("/weights", "not conserved at vertex " + v.to_string() + " (in - out = "
                                      + orderflow::to_string(b) + ")");
        }
      }
    }

    std::vector<Piece> get_pieces(Json const& j, Sink& sink) {
      std::vector<Piece> out;
      if (!j.is_object() || !j.contains("pieces") || !j["pieces"].is_array()
          || j["pieces"].empty()) {
        sink.report("/pieces", "expected a non-empty array of pieces");
        return out;
      }
      auto const& arr = j["pieces"];
      for (std::size_t i = 0; i < arr.size(); ++i) {
        std::string where = "/pieces/" + std::to_string(i);
        auto const& p     = arr[i];
        if (!p.is_object()) {
          sink.report(where, "expected an object");
          continue;
        }
        Piece piece;
        bool  ok = true;
        for (auto [name, slot] : {std::pair<char const*, Rational*>{"lo", &piece.lo},
                                  {"hi", &piece.hi},
                                  {"a", &piece.a},
                                  {"b", &piece.b}}) {
          if (!p.contains(name)) {
            sink.report(where + "/" + name, "missing");
            ok = false;
            continue;
          }
          auto q = get_rational(p[name], where + "/" + name, sink);
          if (q) {
            *slot = *q;
          } else {
            ok = false;
          }
        }
        if (p.contains("tail") && !p["tail"].is_null()) {
          try {
            if (!p["tail"].is_string()) {
              throw Error(ErrorKind::parse_error, "expected a string like \"sqrt2-1\"");
            }
            piece.tail = parse_surd(p["tail"].get<std::string>());
          } catch (Error const& e) {
            sink.report(where + "/tail", e.what());
            ok = false;
          }
        }
        if (ok) {
          out.push_back(std::move(piece));
        }
      }
      return out;
    }

    void check_map(Json const& j, Sink& sink) {
      std::size_t before = sink.count();
      auto        pieces = get_pieces(j, sink);
      if (sink.count() != before) {
        return;
      }
      try {
        IntervalMap("check", pieces);
      } catch (Error const& e) {
        sink.report("/pieces", e.what());
      }
    }
  }  // namespace

  Json to_json(Subgraph const& h) {
    Json j;
    j["n"]     = h.n();
    j["edges"] = Json::array();
    for (auto const& e : h.edges()) {
      j["edges"].push_back(e.to_string());
    }
    return j;
  }

  Subgraph subgraph_from_json(Json const& j) {
    Sink sink;
    check_subgraph(j, sink);
    Subgraph h(j["n"].get<int>());
    for (auto const& e : j["edges"]) {
      h.insert(Perm::parse(e.get<std::string>()));
    }
    return h;
  }

  Json to_json(DiPath const& p) {
    Json j;
    j["n"]     = p.n();
    j["edges"] = Json::array();
    for (auto const& e : p.edges()) {
      j["edges"].push_back(e.to_string());
    }
    return j;
  }

  DiPath path_from_json(Json const& j) {
    Sink sink;
    auto n = get_n(j, sink, 1);
    std::vector<Perm> edges;
    for (auto const& e : get_edges(j, *n, sink)) {
      edges.push_back(*e);
    }
    if (edges.empty()) {
      throw Error(ErrorKind::parse_error, "/edges: a path needs at least one edge");
    }
    return DiPath(std::move(edges));
  }

  Json to_json(ExactDistribution const& mu) {
    Json j;
    j["n"]       = mu.n();
    j["weights"] = Json::object();
    for (auto const& [p, m] : mu.masses()) {
      j["weights"][p.to_string()] = orderflow::to_string(m);
    }
    return j;
  }

  Json to_json(Flow const& mu) {
    return to_json(mu.distribution());
  }

  Flow flow_from_json(Json const& j) {
    Sink sink;
    auto n = get_n(j, sink, 2);
    auto w = get_weights(j, *n, sink);
    return Flow(ExactDistribution(*n, std::move(w)));
  }

  Json to_json(IntervalMap const& f) {
    if (!f.piecewise_affine()) {
      throw Error(ErrorKind::not_piecewise_affine, f.name() + " has no piecewise description");
    }
    Json j;
    j["name"]               = f.name();
    j["measure_preserving"] = to_string(f.measure());
    j["aperiodic"]          = f.aperiodic();
    j["pieces"]             = Json::array();
    for (auto const& p : f.pieces()) {
      Json q;
      q["lo"] = orderflow::to_string(p.lo);
      q["hi"] = orderflow::to_string(p.hi);
      q["a"]  = orderflow::to_string(p.a);
      q["b"]  = orderflow::to_string(p.b);
      if (p.tail) {
        q["tail"] = orderflow::to_string(*p.tail);
      }
      j["pieces"].push_back(std::move(q));
    }
    return j;
  }

  IntervalMap map_from_json(Json const& j) {
    Sink        sink;
    auto        pieces = get_pieces(j, sink);
    std::string name   = j.contains("name") && j["name"].is_string()
                             ? j["name"].get<std::string>()
                             : std::string("map");
    IntervalMap f(name, std::move(pieces));
    if (j.contains("aperiodic") && j["aperiodic"].is_boolean()) {
      f.set_aperiodic(j["aperiodic"].get<bool>());
    }
    return f;
  }

  Json to_json(SubgraphDriftReport const& r) {
    Json j;
    if (!r.drifts) {
      j["verdict"] = "driftless";
      return j;
    }
    j["verdict"] = "drifts";
    if (r.witness) {
      j["witness"] = {{"vertex", r.witness->vertex.to_string()},
                      {"index", r.witness->index + 1},
                      {"sign", std::string(1, to_char(r.witness->sign))}};
    }
    return j;
  }

  Json loop_report(DiPath const& loop) {
    DriftMatrix d = loop_drift(loop);
    Json        j;
    j["class"]    = to_string(classify(d));
    j["diagonal"] = d.diagonal_string();
    Json rows     = Json::array();
    for (int i = 0; i < d.n(); ++i) {
      std::string row;
      for (int k = 0; k < d.n(); ++k) {
        row += to_char(d(i, k));
      }
      rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    j["length"] = loop.length();
    return j;
  }

  namespace {
    Json spans(std::map<Perm, Span> const& m) {
      Json j = Json::object();
      for (auto const& [p, s] : m) {
        j[p.to_string()] = Json::array({orderflow::to_string(s.lo), orderflow::to_string(s.hi)});
      }
      return j;
    }
  }  // namespace

  Json to_json(IntervalTree const& t) {
    return Json{{"depth", t.depth()}, {"intervals", spans(t.intervals())}};
  }

  Json to_json(SeparatorTree const& s) {
    return Json{{"depth", s.depth()}, {"intervals", spans(s.intervals())}};
  }

  Json read_json(std::istream& in) {
    try {
      return Json::parse(in);
    } catch (nlohmann::json::exception const& e) {
      throw Error(ErrorKind::parse_error, std::string("invalid JSON: ") + e.what());
    }
  }

  Json read_json_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::invalid_argument, "cannot open " + path);
    }
    return read_json(in);
  }

  void write_json_file(std::string const& path, Json const& j) {
    std::ofstream out(path);
    if (!out) {
      throw Error(ErrorKind::invalid_argument, "cannot write " + path);
    }
    out << j.dump(2) << "\n";
  }

  Format parse_format(std::string const& name) {
    static std::map<std::string, Format> const names{
        {"auto", Format::automatic},       {"subgraph", Format::subgraph},
        {"path", Format::path},            {"flow", Format::flow},
        {"map", Format::map},              {"distribution", Format::distribution}};
    auto it = names.find(name);
    if (it == names.end()) {
      throw Error(ErrorKind::invalid_argument, "unknown format '" + name + "'");
    }
    return it->second;
  }

  char const* to_string(Format f) {
    switch (f) {
      case Format::automatic:
        return "auto";
      case Format::subgraph:
        return "subgraph";
      case Format::path:
        return "path";
      case Format::flow:
        return "flow";
      case Format::map:
        return "map";
      case Format::distribution:
        return "distribution";
    }
    return "?";
  }

  Validation validate_json(Json const& j, Format format) {
    if (format == Format::automatic) {
      if (j.is_object() && j.contains("weights")) {
        format = Format::flow;
      } else if (j.is_object() && j.contains("pieces")) {
        format = Format::map;
      } else {
        format = Format::subgraph;
      }
    }
    Validation v{format, {}};
    Sink       sink(&v.diagnostics);
    switch (format) {
      case Format::subgraph:
        check_subgraph(j, sink);
        break;
      case Format::path:
        check_path(j, sink);
        break;
      case Format::flow:
        check_flow(j, sink);
        break;
      case Format::map:
        check_map(j, sink);
        break;
      default:
        sink.report("", std::string("a ") + to_string(format) + " is not a JSON format");
    }
    return v;
  }

  Validation validate_text(std::string const& text, Format format) {
    auto first = text.find_first_not_of(" \t\r\n");
    bool json  = first != std::string::npos && (text[first] == '{' || text[first] == '[');
    if (format == Format::distribution || (format == Format::automatic && !json)) {
      Validation v{Format::distribution, {}};
      try {
        std::istringstream in(text);
        (void) read_distribution_csv(in);
      } catch (Error const& e) {
        v.diagnostics.push_back(e.what());
      }
      return v;
    }
    Json j;
    try {
      j = Json::parse(text);
    } catch (nlohmann::json::exception const& e) {
      return Validation{format, {std::string("invalid JSON: ") + e.what()}};
    }
    return validate_json(j, format);
  }

  Validation validate_file(std::string const& path, Format format) {
    std::ifstream in(path);
    if (!in) {
      throw Error(ErrorKind::invalid_argument, "cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return validate_text(buf.str(), format);
  }

}  // namespace orderflow::io
