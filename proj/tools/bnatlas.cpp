#include <atomic>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "bnatlas/chains.hpp"
#include "bnatlas/core.hpp"
#include "bnatlas/dimension.hpp"
#include "bnatlas/json_io.hpp"
#include "bnatlas/maximal.hpp"
#include "bnatlas/noncontainment.hpp"
#include "bnatlas/prym.hpp"
#include "json.hpp"

namespace {

using namespace bnatlas;

Int parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail("domain", "cannot parse " + what + " from \"" + s + "\"");
  }
}

std::vector<Int> parse_int_list(const std::string& s,
                                const std::string& what) {
  std::vector<Int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    out.push_back(parse_int(item, what));
  if (out.empty()) fail("domain", "empty " + what + " list");
  return out;
}

std::string render_checks(const VerificationReport& rep) {
  if (rep.all_passed())
    return "all-pass (" + std::to_string(rep.checks.size()) + " checks)";
  std::string out = "FAIL:";
  for (const auto& [name, ok] : rep.checks)
    if (!ok) out += " " + name;
  return out;
}

std::string render_sequence(const VanishingSequence& v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.entries().size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v.entries()[i]);
  }
  return out + "]";
}

void emit_finding(const nlohmann::json& finding) {
  std::cout << canonical_dump(nlohmann::json{{"finding", finding}});
}

// ---------------------------------------------------------------- rho --

struct RhoArgs {
  Int g = 0, r = 0, d = 0;
  std::vector<std::string> rams;
  bool json = false;
};

int run_rho(const RhoArgs& a) {
  const LocusId base{a.g, a.r, a.d};
  Int value = 0;
  if (a.rams.empty()) {
    value = rho(base);
  } else {
    PointedLocus P{base, {}};
    for (const std::string& ram_text : a.rams) {
      const std::vector<Int> entries =
          parse_int_list(ram_text, "vanishing sequence entry");
      P.marks.push_back(
          VanishingSequence(a.r, a.d, entries).to_ramification());
    }
    value = adjusted_rho(P);
  }
  if (a.json)
    std::cout << canonical_dump(nlohmann::json{{"rho", value}});
  else
    std::cout << value << "\n";
  return 0;
}

// ------------------------------------------------------------ maximal --

struct MaximalArgs {
  Int g = 0;
  bool json = false;
};

std::string render_status(const ConjectureStatus& st) {
  std::string out = "exceptional=";
  out += st.exceptional ? "yes" : "no";
  out += " verified-small=";
  out += st.verified_small ? "yes" : "no";
  out += " ckk-family=";
  if (st.ckk_family)
    out += "yes(n=" + std::to_string(*st.ckk_n) + ")";
  else
    out += "no";
  return out;
}

int run_maximal(const MaximalArgs& a) {
  const std::vector<LocusId> loci = enumerate_expected_maximal(a.g);
  const ConjectureStatus st = conjecture_status(a.g);
  if (a.json) {
    nlohmann::json j{{"genus", a.g}, {"status", st}};
    nlohmann::json rows = nlohmann::json::array();
    for (const LocusId& L : loci)
      rows.push_back(nlohmann::json{{"locus", L}, {"rho", rho(L)}});
    j["loci"] = rows;
    std::cout << canonical_dump(j);
    return 0;
  }
  std::cout << "expected-maximal loci at genus " << a.g << ": "
            << loci.size() << "\n";
  std::cout << "  r  d  rho\n";
  for (const LocusId& L : loci)
    std::cout << "  " << L.r << "  " << L.d << "  " << rho(L) << "\n";
  std::cout << "conjecture: " << render_status(st) << "\n";
  return 0;
}

// -------------------------------------------------------------- chain --

struct ChainArgs {
  Int g = 0, r = 0, d = 0;
  std::string mode = "prop31";
  std::string allowed = "-1,-2,-3";
  bool json = false;
};

int run_chain(const ChainArgs& a) {
  const LocusId L{a.g, a.r, a.d};
  ChainDecomposition dec;
  if (a.mode == "prop31") {
    dec = build_chain_prop31(L);
  } else if (a.mode == "search") {
    dec = build_chain_search(L, parse_int_list(a.allowed, "allowed rho"));
  } else {
    fail("domain", "unknown chain mode \"" + a.mode + "\"");
  }
  if (a.json) {
    std::cout << canonical_dump(nlohmann::json(dec));
    return 0;
  }
  std::cout << "chain decomposition of " << to_string(dec.source)
            << "  mode=" << to_string(dec.mode) << "  k=" << dec.k << "\n";
  for (std::size_t i = 0; i < dec.components.size(); ++i) {
    const ChainComponent& c = dec.components[i];
    std::cout << "  component " << (i + 1) << ": genus " << c.genus
              << " degree " << c.degree << " rho " << c.rho;
    if (c.left) std::cout << "  left=" << render_sequence(*c.left);
    if (c.right) std::cout << "  right=" << render_sequence(*c.right);
    std::cout << "\n";
  }
  std::cout << "verification: " << render_checks(dec.report) << "\n";
  return 0;
}

// -------------------------------------------------------------- poset --

struct PosetArgs {
  Int g = 0;
  std::string dot_path;
  std::string json_path;
};

int run_poset(const PosetArgs& a) {
  const StratificationGraph G = build_stratification_graph(a.g);
  const VerificationReport rep = consistency_check(G);
  if (!a.dot_path.empty())
    write_file_atomic(a.dot_path, to_dot(G));
  if (!a.json_path.empty())
    write_file_atomic(a.json_path, canonical_dump(nlohmann::json(G)));
  if (!a.dot_path.empty() || !a.json_path.empty()) return 0;
  std::cout << "stratification graph at genus " << G.genus << ": "
            << G.nodes.size() << " nodes, " << G.edges.size()
            << " edges\n";
  for (const GraphEdge& e : G.edges) {
    std::cout << "  " << to_string(e.from) << " -> " << to_string(e.to)
              << ": " << to_string(e.label);
    if (e.certificate)
      std::cout << " [" << to_string(G.certificates[*e.certificate].kind)
                << "]";
    else if (!e.flag.empty())
      std::cout << " [" << e.flag << "]";
    std::cout << "\n";
  }
  std::cout << "consistency: " << render_checks(rep) << "\n";
  return 0;
}

// ------------------------------------------------------------ dimcert --

struct DimcertArgs {
  Int g = 0, r = 0, d = 0;
  bool json = false;
};

void render_dim_node(const DimNode& n, int depth) {
  std::cout << std::string(2 * depth + 2, ' ') << to_string(n.raw)
            << " => " << to_string(n.locus) << "  rho=" << n.rho << "  "
            << to_string(n.tag) << "\n";
  for (const DimNode& c : n.children) render_dim_node(c, depth + 1);
}

int run_dimcert(const DimcertArgs& a) {
  const LocusId L{a.g, a.r, a.d};
  const DimCertificate C = expected_dim_certificate(L);
  if (a.json) {
    std::cout << canonical_dump(nlohmann::json(C));
    return 0;
  }
  std::cout << "expected-dimension certificate for " << to_string(L)
            << "  rho=" << rho(L) << "\n";
  render_dim_node(C.tree, 0);
  std::cout << "verification: " << render_checks(verify_dim_certificate(C))
            << "\n";
  return 0;
}

// --------------------------------------------------------------- prym --

struct PrymArgs {
  Int r = 0, eps = 0;
  bool cor55 = false;
  bool json = false;
};

int run_prym(const PrymArgs& a) {
  if (a.cor55) {
    const Cor55Result res = cor55_check(a.r);
    if (res.gap) {
      emit_finding(nlohmann::json{{"code", "hypothesis-gap"},
                                  {"failed_clause", res.gap->failed_clause},
                                  {"details", res.gap->details},
                                  {"result", res}});
      return 3;
    }
    if (a.json)
      std::cout << canonical_dump(nlohmann::json(res));
    else
      std::cout << "cor55 r=" << a.r << ": " << to_string(res.a)
                << " not contained in " << to_string(res.b)
                << " (certificate verified)\n";
    return 0;
  }
  const PrymParams P = prym_params(a.r, a.eps);
  const std::vector<Certificate> certs = cor54_certificates(a.r, a.eps);
  if (a.json) {
    std::cout << canonical_dump(
        nlohmann::json{{"params", P}, {"certificates", certs}});
    return 0;
  }
  std::cout << "prym parameters r=" << P.r << " eps=" << P.eps
            << ": g_base=" << P.g_base << " g_tilde=" << P.g_tilde
            << " target=" << to_string(P.target) << " rho=" << P.rho
            << "\n";
  std::cout << "non-containment certificates: " << certs.size() << "\n";
  for (const Certificate& c : certs)
    std::cout << "  " << to_string(c.kind) << ": "
              << to_string(c.subject.at("a").get<LocusId>())
              << " not contained in "
              << to_string(c.subject.at("b").get<LocusId>()) << "\n";
  return 0;
}

// --------------------------------------------------------------- scan --

struct ScanArgs {
  Int from = 0, to = 0;
  std::string out;
  Int jobs = 1;
};

struct ScanSlot {
  Int g = 0;
  std::string path;
  bool existed = false;
  bool reverify_failed = false;
  StratificationGraph graph;
};

int run_scan(const ScanArgs& a) {
  if (a.from > a.to)
    fail("domain", "scan range is empty: --from " + std::to_string(a.from) +
                       " > --to " + std::to_string(a.to));
  if (a.jobs < 1 || a.jobs > 256)
    fail("domain", "--jobs must be between 1 and 256");
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(a.out, ec);
  if (ec && !fs::is_directory(a.out))
    fail("io", "cannot create output directory " + a.out + ": " +
                   ec.message());

  const std::size_t count = static_cast<std::size_t>(a.to - a.from + 1);
  std::vector<ScanSlot> slots(count);
  for (std::size_t i = 0; i < count; ++i) {
    slots[i].g = a.from + static_cast<Int>(i);
    slots[i].path =
        (fs::path(a.out) / ("g-" + std::to_string(slots[i].g) + ".json"))
            .string();
  }

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      ScanSlot& slot = slots[i];
      try {
        if (fs::exists(slot.path)) {
          slot.existed = true;
          /* Idempotent rerun: reload and re-verify instead of rebuilding.
             Any parse or consistency failure marks the file bad. */
          try {
            const nlohmann::json j = read_json_file(slot.path);
            slot.graph = j.get<StratificationGraph>();
            if (slot.graph.genus != slot.g ||
                !consistency_check(slot.graph).all_passed())
              slot.reverify_failed = true;
          } catch (const std::exception&) {
            slot.reverify_failed = true;
          }
        } else {
          slot.graph = build_stratification_graph(slot.g);
          write_file_atomic(slot.path,
                            canonical_dump(nlohmann::json(slot.graph)));
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(a.jobs), count);
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  bool any_reverify_failed = false;
  for (const ScanSlot& slot : slots) {
    if (slot.reverify_failed) {
      any_reverify_failed = true;
      std::cerr << "re-verification failed: " << slot.path << "\n";
    }
  }
  if (any_reverify_failed) return 4;

  nlohmann::json genera = nlohmann::json::array();
  for (const ScanSlot& slot : slots) {
    Int contained = 0, not_contained = 0, unknown = 0;
    for (const GraphEdge& e : slot.graph.edges) {
      switch (e.label) {
        case EdgeLabel::Contained: ++contained; break;
        case EdgeLabel::NotContained: ++not_contained; break;
        case EdgeLabel::Unknown: ++unknown; break;
      }
    }
    genera.push_back(nlohmann::json{{"g", slot.g},
                                    {"nodes", slot.graph.nodes.size()},
                                    {"contained", contained},
                                    {"not-contained", not_contained},
                                    {"unknown", unknown}});
  }
  const nlohmann::json summary{
      {"from", a.from}, {"to", a.to}, {"genera", genera}};
  write_file_atomic((fs::path(a.out) / "summary.json").string(),
                    canonical_dump(summary));

  /* The sidecar is the only output that carries a timestamp; payload
     files stay byte-stable across reruns. */
  const auto now = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
  const nlohmann::json meta{{"command", "scan"},
                            {"from", a.from},
                            {"to", a.to},
                            {"generated_at", now}};
  write_file_atomic((fs::path(a.out) / "meta.json").string(),
                    canonical_dump(meta));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact combinatorics of Brill-Noether loci: rho, expected-"
               "maximal enumeration, chain degenerations, containment "
               "certificates"};
  app.require_subcommand(1);

  RhoArgs rho_args;
  CLI::App* rho_cmd =
      app.add_subcommand("rho", "Brill-Noether number, optionally adjusted "
                                "for ramification at marked points");
  rho_cmd->add_option("--g", rho_args.g, "genus")->required();
  rho_cmd->add_option("--r", rho_args.r, "projective dimension")->required();
  rho_cmd->add_option("--d", rho_args.d, "degree")->required();
  rho_cmd->add_option("--ram", rho_args.rams,
                      "vanishing sequence a0,a1,...,ar of a marked point "
                      "(repeatable)");
  rho_cmd->add_flag("--json", rho_args.json, "emit JSON");

  MaximalArgs maximal_args;
  CLI::App* maximal_cmd = app.add_subcommand(
      "maximal", "enumerate expected-maximal loci at a genus");
  maximal_cmd->add_option("--g", maximal_args.g, "genus")->required();
  maximal_cmd->add_flag("--json", maximal_args.json, "emit JSON");

  ChainArgs chain_args;
  CLI::App* chain_cmd = app.add_subcommand(
      "chain", "build a verified chain decomposition of a locus");
  chain_cmd->add_option("--g", chain_args.g, "genus")->required();
  chain_cmd->add_option("--r", chain_args.r, "projective dimension")
      ->required();
  chain_cmd->add_option("--d", chain_args.d, "degree")->required();
  chain_cmd->add_option("--mode", chain_args.mode,
                        "construction mode: prop31 or search")
      ->check(CLI::IsMember({"prop31", "search"}));
  chain_cmd->add_option("--allowed", chain_args.allowed,
                        "allowed per-component rho values for search mode, "
                        "e.g. -1,-2,-3");
  chain_cmd->add_flag("--json", chain_args.json, "emit JSON");

  PosetArgs poset_args;
  CLI::App* poset_cmd = app.add_subcommand(
      "poset", "stratification graph of expected-maximal loci at a genus");
  poset_cmd->add_option("--g", poset_args.g, "genus")->required();
  poset_cmd->add_option("--dot", poset_args.dot_path,
                        "write DOT graph to this path");
  poset_cmd->add_option("--json", poset_args.json_path,
                        "write graph JSON to this path");

  DimcertArgs dimcert_args;
  CLI::App* dimcert_cmd = app.add_subcommand(
      "dimcert", "expected-dimension certificate for a locus");
  dimcert_cmd->add_option("--g", dimcert_args.g, "genus")->required();
  dimcert_cmd->add_option("--r", dimcert_args.r, "projective dimension")
      ->required();
  dimcert_cmd->add_option("--d", dimcert_args.d, "degree")->required();
  dimcert_cmd->add_flag("--json", dimcert_args.json, "emit JSON");

  PrymArgs prym_args;
  CLI::App* prym_cmd = app.add_subcommand(
      "prym", "Prym-derived targets and non-containment certificates");
  prym_cmd->add_option("--r", prym_args.r, "projective dimension")
      ->required();
  prym_cmd->add_option("--eps", prym_args.eps, "offset parameter");
  prym_cmd->add_flag("--cor55", prym_args.cor55,
                     "evaluate the even-rank family check instead");
  prym_cmd->add_flag("--json", prym_args.json, "emit JSON");

  ScanArgs scan_args;
  CLI::App* scan_cmd = app.add_subcommand(
      "scan", "batch stratification graphs over a genus range");
  scan_cmd->add_option("--from", scan_args.from, "first genus")->required();
  scan_cmd->add_option("--to", scan_args.to, "last genus")->required();
  scan_cmd->add_option("--out", scan_args.out, "output directory")
      ->required();
  scan_cmd->add_option("--jobs", scan_args.jobs, "parallel workers");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rho_cmd->parsed()) return run_rho(rho_args);
    if (maximal_cmd->parsed()) return run_maximal(maximal_args);
    if (chain_cmd->parsed()) return run_chain(chain_args);
    if (poset_cmd->parsed()) return run_poset(poset_args);
    if (dimcert_cmd->parsed()) return run_dimcert(dimcert_args);
    if (prym_cmd->parsed()) return run_prym(prym_args);
    if (scan_cmd->parsed()) return run_scan(scan_args);
  } catch (const Error& e) {
    if (e.code() == "no-decomposition-found") {
      emit_finding(nlohmann::json{{"code", "no-decomposition-found"},
                                  {"message", e.what()}});
      return 3;
    }
    std::cerr << "error[" << e.code() << "]: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
