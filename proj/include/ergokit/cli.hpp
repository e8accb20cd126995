#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include <json.hpp>

#include "ergokit/state.hpp"

namespace ergokit::cli {

/// Grammar:
///   equispaced:d=<int>,E=<float>
///   matrix:<path to a JSON matrix>
///   composite:<spec>(x<spec>)*   (each <spec> equispaced or matrix)
/// Throws ParseError naming the offending position.
Hamiltonian parse_ham_spec(std::string_view spec);

/// Sum of equispaced E = 1 ladders, one per subsystem (a single ladder for
/// one subsystem).
Hamiltonian default_hamiltonian(std::span<const std::size_t> dims);

enum class Format { Json, Text };

struct Command {
  std::string name;  // capacity, ergotropy, gap, multipartite, total, montecarlo, paper-report, validate
  std::string state_source;
  std::string ham_spec;  // empty selects default_hamiltonian
  Format format = Format::Json;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_path;
  std::optional<double> alpha;
  std::size_t samples = 100000;
  bool csv = false;
};

struct Outcome {
  int exit_code;       // 0 ok, 1 input error, 2 numerical failure
  std::string output;  // report on success, one "error[Code]: ..." line otherwise
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Flag value, else ERGOKIT_SEED, else kDefaultSeed.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag);

Outcome run_command(const Command& cmd);

/// Deterministic reproduction document: worked examples, identities,
/// the Monte Carlo variance check and the errata ledger.
nlohmann::ordered_json paper_report(std::uint64_t seed, std::size_t samples);
std::string render_markdown(const nlohmann::ordered_json& report);

/// Flattened "key: value" lines, numbers at 9 significant digits.
std::string render_text(const nlohmann::ordered_json& doc);

/// %.9g
std::string fmt9(double x);

}  // namespace ergokit::cli
