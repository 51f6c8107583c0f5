#ifndef ORDERFLOW_IO_HPP_
#define ORDERFLOW_IO_HPP_

#include <string>
#include <vector>

#include "json.hpp"
#include "orderflow/cantor.hpp"
#include "orderflow/digraph.hpp"
#include "orderflow/drift.hpp"
#include "orderflow/flows.hpp"
#include "orderflow/intervalmap.hpp"
#include "orderflow/path.hpp"

namespace orderflow::io {

  using Json = nlohmann::ordered_json;

  // {"n": 2, "edges": ["132", "213"]}
  Json     to_json(Subgraph const& h);
  Subgraph subgraph_from_json(Json const& j);

  // {"n": 2, "edges": ["132", "321", "213"]}, edges in order.
  Json   to_json(DiPath const& p);
  DiPath path_from_json(Json const& j);

  // {"n": 3, "weights": {"132": "1/3", ...}}; weights may also be JSON numbers.
  Json to_json(Flow const& mu);
  Json to_json(ExactDistribution const& mu);
  Flow flow_from_json(Json const& j);

  // {"name": ..., "pieces": [{"lo": "0", "hi": "1/2", "a": "2", "b": "0",
  // "tail": "-1+1*sqrt2"}, ...]}
  Json        to_json(IntervalMap const& f);
  IntervalMap map_from_json(Json const& j);

  Json to_json(SubgraphDriftReport const& r);
  Json loop_report(DiPath const& loop);

  Json to_json(IntervalTree const& t);
  Json to_json(SeparatorTree const& s);

  Json read_json(std::istream& in);
  Json read_json_file(std::string const& path);
  void write_json_file(std::string const& path, Json const& j);

  enum class Format { automatic, subgraph, path, flow, map, distribution };
  Format      parse_format(std::string const& name);
  char const* to_string(Format f);

  struct Validation {
    Format                   format;
    std::vector<std::string> diagnostics;
    bool ok() const noexcept {
      return diagnostics.empty();
    }
  };

  // Schema checks with the location of every problem.  In automatic mode a
  // JSON file with "weights" is a flow, with "pieces" a map, with "edges" a
  // subgraph; a CSV file is a distribution.
  Validation validate_json(Json const& j, Format format);
  Validation validate_text(std::string const& text, Format format);
  Validation validate_file(std::string const& path, Format format = Format::automatic);

}  // namespace orderflow::io

#endif  // ORDERFLOW_IO_HPP_
