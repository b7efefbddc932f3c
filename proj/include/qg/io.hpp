#pragma once

#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "qg/action.hpp"
#include "qg/graph.hpp"
#include "qg/group.hpp"
#include "qg/quotient.hpp"
#include "qg/rep.hpp"
#include "qg/spectral.hpp"

namespace qg::io {

using Json = nlohmann::json;
namespace fs = std::filesystem;

/// Sorted keys, floats as %.17g (always with a '.' or exponent), arrays of
/// scalars on one line.
std::string canonical_dump(const Json& j);

Json read_json(const fs::path& path);
void write_json(const fs::path& path, const Json& j);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);
Json matrix_to_json(const CMatrix& m);
/// `cols` fixes the width of an empty matrix.
CMatrix matrix_from_json(const Json& j, int cols = -1);

Json group_to_json(const FiniteGroup& g);
GroupPtr group_from_json(const Json& j);

/// `group_ref` is either a relative path string or an inline group object.
Json rep_to_json(const Representation& rep, const Json& group_ref);
Representation rep_from_json(const Json& j, const GroupPtr& group);

Json graph_to_json(const QuantumGraph& g);
QuantumGraph graph_from_json(const Json& j);

Json action_to_json(const GraphAction& a, const Json& group_ref, const Json& graph_ref);
GraphAction action_from_json(const Json& j, const GroupPtr& group, QuantumGraph graph);

Json spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const Json& j);
/// Columns k, lambda, multiplicity; a zero mode is written as a k = 0 row.
std::string spectrum_csv(const Spectrum& s);

Json report_to_json(const SpectrumReport& r);
Json provenance_to_json(const QuotientResult& q, const Classification& c);

/// Loads files and resolves references. Groups with identical content share
/// one instance, so reps and actions loaded through the same Loader agree.
class Loader {
 public:
  GroupPtr group(const fs::path& path);
  Representation rep(const fs::path& path);
  QuantumGraph graph(const fs::path& path);
  GraphAction action(const fs::path& path);

  GroupPtr resolve_group(const Json& ref, const fs::path& base);
  QuantumGraph resolve_graph(const Json& ref, const fs::path& base);

 private:
  GroupPtr intern(const Json& group_json);
  std::map<std::string, GroupPtr> groups_;
};

}  // namespace qg::io
