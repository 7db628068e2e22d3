#include "bnatlas/json_io.hpp"

#include <cstdio>
#include <fstream>

namespace bnatlas {

namespace {

nlohmann::json checks_to_json(
    const std::vector<std::pair<std::string, bool>>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [name, ok] : checks)
    arr.push_back(nlohmann::json{{"name", name}, {"ok", ok}});
  return arr;
}

std::vector<std::pair<std::string, bool>> checks_from_json(
    const nlohmann::json& arr) {
  std::vector<std::pair<std::string, bool>> out;
  for (const auto& item : arr)
    out.emplace_back(item.at("name").get<std::string>(),
                     item.at("ok").get<bool>());
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const LocusId& v) {
  j = nlohmann::json{{"g", v.g}, {"r", v.r}, {"d", v.d}};
}

void from_json(const nlohmann::json& j, LocusId& v) {
  v.g = j.at("g").get<Int>();
  v.r = j.at("r").get<Int>();
  v.d = j.at("d").get<Int>();
}

void to_json(nlohmann::json& j, const VanishingSequence& v) {
  j = nlohmann::json{
      {"r", v.type_r()}, {"d", v.type_d()}, {"entries", v.entries()}};
}

VanishingSequence vanishing_sequence_from_json(const nlohmann::json& j) {
  return VanishingSequence(j.at("r").get<Int>(), j.at("d").get<Int>(),
                           j.at("entries").get<std::vector<Int>>());
}

void to_json(nlohmann::json& j, const TrivialContainment& v) {
  j = nlohmann::json{{"target", v.target},
                     {"rule", to_string(v.rule)},
                     {"target_rho", v.target_rho}};
}

void from_json(const nlohmann::json& j, TrivialContainment& v) {
  v.target = j.at("target").get<LocusId>();
  const std::string rule = j.at("rule").get<std::string>();
  if (rule == "add-basepoint")
    v.rule = ContainmentRule::AddBasepoint;
  else if (rule == "remove-non-basepoint")
    v.rule = ContainmentRule::RemoveNonBasepoint;
  else
    fail("domain", "unknown containment rule \"" + rule + "\"");
  v.target_rho = j.at("target_rho").get<Int>();
}

void to_json(nlohmann::json& j, const ConjectureStatus& v) {
  j = nlohmann::json{{"g", v.g},
                     {"exceptional", v.exceptional},
                     {"verified_small", v.verified_small},
                     {"ckk_family", v.ckk_family},
                     {"ckk_n", nullptr}};
  if (v.ckk_n) j["ckk_n"] = *v.ckk_n;
}

void from_json(const nlohmann::json& j, ConjectureStatus& v) {
  v.g = j.at("g").get<Int>();
  v.exceptional = j.at("exceptional").get<bool>();
  v.verified_small = j.at("verified_small").get<bool>();
  v.ckk_family = j.at("ckk_family").get<bool>();
  v.ckk_n.reset();
  if (!j.at("ckk_n").is_null()) v.ckk_n = j.at("ckk_n").get<Int>();
}

void to_json(nlohmann::json& j, const ChainComponent& v) {
  j = nlohmann::json{{"genus", v.genus},
                     {"degree", v.degree},
                     {"rho", v.rho},
                     {"left", nullptr},
                     {"right", nullptr}};
  if (v.left) j["left"] = *v.left;
  if (v.right) j["right"] = *v.right;
}

void from_json(const nlohmann::json& j, ChainComponent& v) {
  v.genus = j.at("genus").get<Int>();
  v.degree = j.at("degree").get<Int>();
  v.rho = j.at("rho").get<Int>();
  v.left.reset();
  v.right.reset();
  if (!j.at("left").is_null())
    v.left = vanishing_sequence_from_json(j.at("left"));
  if (!j.at("right").is_null())
    v.right = vanishing_sequence_from_json(j.at("right"));
}

void to_json(nlohmann::json& j, const VerificationReport& v) {
  j = nlohmann::json{{"checks", checks_to_json(v.checks)}};
}

void from_json(const nlohmann::json& j, VerificationReport& v) {
  v.checks = checks_from_json(j.at("checks"));
}

void to_json(nlohmann::json& j, const ChainDecomposition& v) {
  j = nlohmann::json{{"source", v.source},
                     {"k", v.k},
                     {"mode", to_string(v.mode)},
                     {"allowed_rhos", v.allowed_rhos},
                     {"components", v.components},
                     {"report", v.report}};
}

void from_json(const nlohmann::json& j, ChainDecomposition& v) {
  v.source = j.at("source").get<LocusId>();
  v.k = j.at("k").get<Int>();
  v.mode = chain_mode_from_string(j.at("mode").get<std::string>());
  v.allowed_rhos = j.at("allowed_rhos").get<std::vector<Int>>();
  v.components = j.at("components").get<std::vector<ChainComponent>>();
  v.report = j.at("report").get<VerificationReport>();
}

void to_json(nlohmann::json& j, const Schedule& v) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& [a, ap] : v.nodes)
    nodes.push_back(nlohmann::json{{"from_left", a}, {"from_right", ap}});
  j = nlohmann::json{{"nodes", nodes},
                     {"component_rhos", v.component_rhos},
                     {"total", v.total},
                     {"refined", v.refined}};
}

void from_json(const nlohmann::json& j, Schedule& v) {
  v.nodes.clear();
  for (const auto& item : j.at("nodes"))
    v.nodes.emplace_back(vanishing_sequence_from_json(item.at("from_left")),
                         vanishing_sequence_from_json(item.at("from_right")));
  v.component_rhos = j.at("component_rhos").get<std::vector<Int>>();
  v.total = j.at("total").get<Int>();
  v.refined = j.at("refined").get<bool>();
}

void to_json(nlohmann::json& j, const Certificate& v) {
  j = nlohmann::json{{"kind", to_string(v.kind)},
                     {"subject", v.subject},
                     {"witness", v.witness},
                     {"verified", v.verified}};
}

void from_json(const nlohmann::json& j, Certificate& v) {
  v.kind = cert_kind_from_string(j.at("kind").get<std::string>());
  v.subject = j.at("subject");
  v.witness = j.at("witness");
  v.verified = j.at("verified").get<bool>();
}

void to_json(nlohmann::json& j, const GraphEdge& v) {
  j = nlohmann::json{{"from", v.from},
                     {"to", v.to},
                     {"label", to_string(v.label)},
                     {"certificate", nullptr},
                     {"flag", v.flag}};
  if (v.certificate) j["certificate"] = *v.certificate;
}

void from_json(const nlohmann::json& j, GraphEdge& v) {
  v.from = j.at("from").get<LocusId>();
  v.to = j.at("to").get<LocusId>();
  const std::string label = j.at("label").get<std::string>();
  if (label == "contained")
    v.label = EdgeLabel::Contained;
  else if (label == "not-contained")
    v.label = EdgeLabel::NotContained;
  else if (label == "unknown")
    v.label = EdgeLabel::Unknown;
  else
    fail("domain", "unknown edge label \"" + label + "\"");
  v.certificate.reset();
  if (!j.at("certificate").is_null())
    v.certificate = j.at("certificate").get<std::size_t>();
  v.flag = j.at("flag").get<std::string>();
}

void to_json(nlohmann::json& j, const StratificationGraph& v) {
  j = nlohmann::json{{"genus", v.genus},
                     {"status", v.status},
                     {"nodes", v.nodes},
                     {"edges", v.edges},
                     {"certificates", v.certificates}};
}

void from_json(const nlohmann::json& j, StratificationGraph& v) {
  v.genus = j.at("genus").get<Int>();
  v.status = j.at("status").get<ConjectureStatus>();
  v.nodes = j.at("nodes").get<std::vector<LocusId>>();
  v.edges = j.at("edges").get<std::vector<GraphEdge>>();
  v.certificates = j.at("certificates").get<std::vector<Certificate>>();
}

void to_json(nlohmann::json& j, const DimNode& v) {
  j = nlohmann::json{{"raw", v.raw},
                     {"locus", v.locus},
                     {"rho", v.rho},
                     {"tag", to_string(v.tag)},
                     {"checks", checks_to_json(v.checks)},
                     {"children", v.children}};
}

void from_json(const nlohmann::json& j, DimNode& v) {
  v.raw = j.at("raw").get<LocusId>();
  v.locus = j.at("locus").get<LocusId>();
  v.rho = j.at("rho").get<Int>();
  v.tag = dim_tag_from_string(j.at("tag").get<std::string>());
  v.checks = checks_from_json(j.at("checks"));
  v.children = j.at("children").get<std::vector<DimNode>>();
}

void to_json(nlohmann::json& j, const DimCertificate& v) {
  j = nlohmann::json{{"root", v.root}, {"tree", v.tree}};
}

void from_json(const nlohmann::json& j, DimCertificate& v) {
  v.root = j.at("root").get<LocusId>();
  v.tree = j.at("tree").get<DimNode>();
}

void to_json(nlohmann::json& j, const PrymParams& v) {
  j = nlohmann::json{{"r", v.r},
                     {"eps", v.eps},
                     {"g_base", v.g_base},
                     {"g_tilde", v.g_tilde},
                     {"target", v.target},
                     {"rho", v.rho}};
}

void from_json(const nlohmann::json& j, PrymParams& v) {
  v.r = j.at("r").get<Int>();
  v.eps = j.at("eps").get<Int>();
  v.g_base = j.at("g_base").get<Int>();
  v.g_tilde = j.at("g_tilde").get<Int>();
  v.target = j.at("target").get<LocusId>();
  v.rho = j.at("rho").get<Int>();
}

void to_json(nlohmann::json& j, const HypothesisGap& v) {
  j = nlohmann::json{{"failed_clause", v.failed_clause},
                     {"details", v.details}};
}

void from_json(const nlohmann::json& j, HypothesisGap& v) {
  v.failed_clause = j.at("failed_clause").get<std::string>();
  v.details = j.at("details").get<std::string>();
}

void to_json(nlohmann::json& j, const Cor55Result& v) {
  j = nlohmann::json{{"a", v.a},
                     {"b", v.b},
                     {"rho_a", v.rho_a},
                     {"rho_b", v.rho_b},
                     {"certificate", nullptr},
                     {"gap", nullptr}};
  if (v.certificate) j["certificate"] = *v.certificate;
  if (v.gap) j["gap"] = *v.gap;
}

void from_json(const nlohmann::json& j, Cor55Result& v) {
  v.a = j.at("a").get<LocusId>();
  v.b = j.at("b").get<LocusId>();
  v.rho_a = j.at("rho_a").get<Int>();
  v.rho_b = j.at("rho_b").get<Int>();
  v.certificate.reset();
  v.gap.reset();
  if (!j.at("certificate").is_null())
    v.certificate = j.at("certificate").get<Certificate>();
  if (!j.at("gap").is_null()) v.gap = j.at("gap").get<HypothesisGap>();
}

std::string canonical_dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail("io", "cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail("io", "short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    fail("io", "cannot rename " + tmp + " to " + path);
  }
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("io", "cannot open " + path + " for reading");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail("io", "invalid JSON in " + path + ": " + e.what());
  }
}

}  // namespace bnatlas
