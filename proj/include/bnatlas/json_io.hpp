#pragma once

#include <string>

#include "json.hpp"

#include "bnatlas/chains.hpp"
#include "bnatlas/core.hpp"
#include "bnatlas/dimension.hpp"
#include "bnatlas/maximal.hpp"
#include "bnatlas/noncontainment.hpp"
#include "bnatlas/prym.hpp"

/* JSON round-trips for every value type the library exposes, plus the
   deterministic file conventions: sorted keys (nlohmann's ordered map),
   two-space indentation, trailing newline, and atomic writes.  Parsing
   goes through the validating constructors, so a file that decodes is
   already structurally sane. */

namespace bnatlas {

void to_json(nlohmann::json& j, const LocusId& v);
void from_json(const nlohmann::json& j, LocusId& v);

void to_json(nlohmann::json& j, const VanishingSequence& v);
VanishingSequence vanishing_sequence_from_json(const nlohmann::json& j);

void to_json(nlohmann::json& j, const TrivialContainment& v);
void from_json(const nlohmann::json& j, TrivialContainment& v);

void to_json(nlohmann::json& j, const ConjectureStatus& v);
void from_json(const nlohmann::json& j, ConjectureStatus& v);

void to_json(nlohmann::json& j, const ChainComponent& v);
void from_json(const nlohmann::json& j, ChainComponent& v);

void to_json(nlohmann::json& j, const VerificationReport& v);
void from_json(const nlohmann::json& j, VerificationReport& v);

void to_json(nlohmann::json& j, const ChainDecomposition& v);
void from_json(const nlohmann::json& j, ChainDecomposition& v);

void to_json(nlohmann::json& j, const Schedule& v);
void from_json(const nlohmann::json& j, Schedule& v);

void to_json(nlohmann::json& j, const Certificate& v);
void from_json(const nlohmann::json& j, Certificate& v);

void to_json(nlohmann::json& j, const GraphEdge& v);
void from_json(const nlohmann::json& j, GraphEdge& v);

void to_json(nlohmann::json& j, const StratificationGraph& v);
void from_json(const nlohmann::json& j, StratificationGraph& v);

void to_json(nlohmann::json& j, const DimNode& v);
void from_json(const nlohmann::json& j, DimNode& v);

void to_json(nlohmann::json& j, const DimCertificate& v);
void from_json(const nlohmann::json& j, DimCertificate& v);

void to_json(nlohmann::json& j, const PrymParams& v);
void from_json(const nlohmann::json& j, PrymParams& v);

void to_json(nlohmann::json& j, const HypothesisGap& v);
void from_json(const nlohmann::json& j, HypothesisGap& v);

void to_json(nlohmann::json& j, const Cor55Result& v);
void from_json(const nlohmann::json& j, Cor55Result& v);

/* dump with two-space indent plus a trailing newline. */
std::string canonical_dump(const nlohmann::json& j);

/* Writes content to path via a sibling temp file and rename, so
   readers never observe a half-written file.  Error("io") on failure. */
void write_file_atomic(const std::string& path, const std::string& content);

/* Error("io") when the file is missing or not valid JSON. */
nlohmann::json read_json_file(const std::string& path);

}  // namespace bnatlas
