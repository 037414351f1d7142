#ifndef SATLAB_IO_HPP_
#define SATLAB_IO_HPP_

#include <stdexcept>
#include <string>
#include <variant>

#include "json.hpp"
#include "satlab/core.hpp"

namespace satlab {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

// Class file: {"domain": [ids], "hypotheses": [[0/1,...],...]}
HypothesisClass class_from_json(const Json& j);
// Graph file: {"vertices": [ids], "edges": [[i,j],...], "loops": [i,...]}
Graph graph_from_json(const Json& j);

using Instance = std::variant<HypothesisClass, Graph>;
// Decides by the keys present. Throws ParseError on malformed input.
Instance instance_from_json(const Json& j);
Instance load_instance(const std::string& path);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

Json to_json(const HypothesisClass& c);
Json to_json(const Graph& g);
Json to_json(const WeightedSet& ws);
Json to_json(const SpecialTree& t);
Json to_json(const HalfGraph& hg);
Json to_json(const SaturationTrace& trace);
Json to_json(const GraphSaturationTrace& trace);

WeightedSet weighted_set_from_json(const Json& j);

}  // namespace satlab

#endif  // SATLAB_IO_HPP_
