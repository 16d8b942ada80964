#ifndef FROBSPLIT_RUNNER_HPP
#define FROBSPLIT_RUNNER_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

namespace frobsplit {

struct JobResult {
  bool pass = false;
  nlohmann::json report;  // structured per-check data
};

JobResult run_split_check(std::uint64_t p, int nvars, const std::string& poly_arg);
JobResult run_flag_verify(int r, std::uint64_t p, bool orders, bool delta);
JobResult run_delta_chain(int r, std::uint64_t p);
JobResult run_tower_verify(int r, std::uint64_t p, bool heavy,
                           const std::optional<std::string>& sigma_y_arg,
                           std::uint64_t max_cells);
JobResult run_repdim(int r, int m, std::optional<std::uint64_t> p);

JobResult run_weights_canonical(const std::string& types, int rank, long degree, int genus);
JobResult run_weights_sigma(const std::string& config_text, const std::string& point, int r1);
JobResult run_weights_codim(const std::string& config_text);
JobResult run_weights_hecke(const std::string& config_text, const std::string& point);
JobResult run_weights_ell(const std::string& config_text);
JobResult run_weights_gps(const std::string& parchi_F, const std::string& r_F, int dimQ_F,
                          const std::string& alpha, int dimQ, const std::string& parchi_E,
                          const std::string& r_E);
JobResult run_weights_njomega(const std::string& config_text, const std::string& I1_csv, long c1,
                              long c2);

JobResult run_stab(const std::string& config_text);

// batch manifest: {"version": 1, "jobs": [{"cmd": "...", "args": ["..."]}]}
JobResult run_batch(const std::string& manifest_text, std::uint64_t seed, int threads);

// dispatch one subcommand with raw argv-style arguments (used by batch)
JobResult dispatch_job(const std::string& cmd, const std::vector<std::string>& args);

}  // namespace frobsplit

#endif
