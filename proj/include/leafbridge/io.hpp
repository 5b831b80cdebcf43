#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "leafbridge/leaf_structure.hpp"
#include "leafbridge/model_search.hpp"
#include "leafbridge/oforest.hpp"
#include "leafbridge/quasi_tree.hpp"
#include "leafbridge/rankwidth.hpp"
#include "leafbridge/report.hpp"
#include "leafbridge/separation.hpp"
#include "leafbridge/tree.hpp"
#include "leafbridge/weights.hpp"

namespace leafbridge::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormat = "leafbridge/v1";

/// Structure kinds, as written in the "kind" field.
enum class Kind { kTree, kOForest, kLeafStructure, kQuasiTree, kUnrootedTree, kSeparation, kGraph, kLaminar, kWeights };

std::string kind_name(Kind k);
/// The "kind" field when present, otherwise inferred from the keys. Throws
/// InputError on a wrong "format" tag or an unrecognizable object.
Kind detect_kind(const Json& j);

/// Parses text; InputError with line and column on malformed JSON.
Json parse(const std::string& text, const std::string& source = "<input>");
/// Reads a file ("-" for standard input).
Json read_file(const std::string& path);

Json to_json(const RootedTree& t);
Json to_json(const OForest& f);
Json to_json(const LeafStructure& ls);
Json to_json(const QuasiTree& q);
Json to_json(const UnrootedTree& t);
/// Generators only: the least of the eight S2 images of each tuple.
Json to_json(const SeparationStructure& ss);
Json to_json(const SimpleGraph& g);
Json to_json(const LaminarFamily& f);
Json to_json(const WeightAssignment& w);
Json to_json(const AxiomReport& r);
Json to_json(const Countermodel& c);
Json rep_to_json(const std::map<NodeId, NodeId>& rep);

RootedTree tree_from_json(const Json& j);
OForest oforest_from_json(const Json& j);
/// close: add the A1/A2 consequences.
LeafStructure leaf_structure_from_json(const Json& j, bool close = false);
/// close: add the B2 mirror of every triple.
QuasiTree quasi_tree_from_json(const Json& j, bool close = false);
UnrootedTree unrooted_tree_from_json(const Json& j);
/// Always closed under S2.
SeparationStructure separation_from_json(const Json& j);
SimpleGraph graph_from_json(const Json& j);
LaminarFamily laminar_from_json(const Json& j);
WeightAssignment weights_from_json(const Json& j);

std::string to_dot(const RootedTree& t);
/// Optional labels keyed by edge (u,v) with u < v by name.
std::string to_dot(const UnrootedTree& t,
                   const std::map<std::pair<NodeId, NodeId>, std::string>& edge_labels = {});
/// Gaifman graph: x–y whenever x and y occur together in a triple.
std::string to_dot(const QuasiTree& q);
std::string to_dot(const SimpleGraph& g);
/// Layout with each edge labelled by its cut rank.
std::string layout_dot(const SimpleGraph& g, const Layout& t);

}  // namespace leafbridge::io
