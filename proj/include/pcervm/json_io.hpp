#pragma once

// JSON (de)serialization for basis specs, fitted models and benchmark
// instances.  Model files are self-describing: the multi-index set is
// stored explicitly.

#include <string>

#include <json.hpp>

#include "pcervm/basis.hpp"
#include "pcervm/cs.hpp"
#include "pcervm/ohagan.hpp"
#include "pcervm/pce.hpp"
#include "pcervm/rvm.hpp"

namespace pcervm {

nlohmann::json to_json(const BasisSpec& spec);
BasisSpec spec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const rvm::FitResult& fit, const rvm::PriorConfig& prior,
                       const rvm::FitConfig& config);
nlohmann::json to_json(const cs::CsResult& fit, const cs::CsConfig& config);
SparsePce model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const OhaganInstance& inst);
OhaganInstance instance_from_json(const nlohmann::json& j);

void write_json_file(const nlohmann::json& j, const std::string& path);
nlohmann::json read_json_file(const std::string& path);

}  // namespace pcervm
