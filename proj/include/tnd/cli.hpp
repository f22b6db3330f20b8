#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "tnd/estimators.hpp"

namespace tnd::cli {

enum class Format { text, csv };

// Exit-code policy: 0 for successful runs, including runs whose estimates
// are undefined (undefinedness is a result); 1 for the reproduce-paper
// self-check failure; 2 for usage, config and I/O errors.
inline constexpr int kExitOk = 0;
inline constexpr int kExitSelfCheck = 1;
inline constexpr int kExitUsage = 2;

// The three worked examples: perfect test, se 70%/sp 95%, se 95%/sp 70%.
// Every printed number is re-derived and checked against exact rational
// references before anything is emitted.
int cmd_reproduce_paper(std::ostream& out, std::ostream& err);

// VE under every method x control policy, plus the assumption gap.
int cmd_estimate(const ObservedCounts& counts, Format format, std::ostream& out,
                 std::ostream& err);

// Single-scenario run (config text), optionally replicated when stochastic.
int cmd_simulate(const std::string& config_text, std::optional<std::uint64_t> seed_override,
                 std::size_t replications, Format format, std::ostream& out, std::ostream& err);

// Sweep from a config with axis.* keys; emits the CSV (or text) table.
int cmd_sweep(const std::string& config_text, std::optional<std::uint64_t> seed_override,
              Format format, std::ostream& out, std::ostream& err);

} // namespace tnd::cli
