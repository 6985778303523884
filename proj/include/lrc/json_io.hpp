#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "lrc/attack.hpp"
#include "lrc/certificates.hpp"
#include "lrc/graphs.hpp"
#include "lrc/lists.hpp"
#include "lrc/params.hpp"
#include "lrc/pipeline.hpp"

namespace lrc {

using Json = nlohmann::json;

// wire formats
Json matrix_to_json(const GeneratorMatrix& g);                 // {"p","n","d","rows"}
GeneratorMatrix matrix_from_json(const Json& j);
Json family_to_json(const ListFamily& fam);                    // {"p","ell","lists"}
ListFamily family_from_json(const Json& j);
Json graph_to_json(const ColoredMultigraph& g);                // {"w","m","edges"}
ColoredMultigraph graph_from_json(const Json& j);
Json certificate_to_json(const TreeCertificate& cert);         // {"w","trees"}
TreeCertificate certificate_from_json(const Json& j);
Json bundle_to_json(const DisjointTreeBundle& b);

Json report_to_json(const RecoveryReport& rep, std::size_t max_witnesses = 64);
Json params_to_json(const RecoveryParams& p);
Json cgr_to_json(const CgrResult& c);
Json plan_to_json(const MainThmPlan& plan, std::uint64_t sample_n);
Json lower_bound_to_json(const LowerBoundParams& lb);
Json attack_to_json(const AttackPlan& plan);
Json pipeline_report_to_json(const PipelineReport& rep);
Json sz_report_to_json(const SzReport& rep);

GridConfig grid_config_from_json(const Json& j);

/// Parse a JSON document; throws InputError with the parser diagnostic.
Json parse_json(const std::string& text);
Json load_json_file(const std::string& path);

/// Write text to path atomically (temp file + rename).
void atomic_write(const std::string& path, const std::string& text);

} // namespace lrc
