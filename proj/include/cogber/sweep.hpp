#ifndef COGBER_SWEEP_HPP
#define COGBER_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cogber/channel_model.hpp"

namespace cogber {

// Config-file problems: parse errors carry file:line, validation errors list
// every violated constraint.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Experiment grid. Every combination of (modulation, hop count, pilot count,
// mu) is evaluated; pilot count 0 encodes perfect CSI.
struct SweepConfig {
    Topology topology = default_topology();
    double alpha = 3.0;
    std::vector<double> mu_db_grid;
    std::vector<int> modulations;
    std::vector<int> hop_counts;
    std::vector<int> pilot_grid;

    int block_length = 100;
    std::int64_t min_bit_errors = 100;
    std::int64_t max_blocks = 1'000'000;
    int streams = 1;

    std::uint64_t seed = 0;
    std::string output_path = "results.csv";

    // Throws ConfigError listing every violated invariant.
    void validate() const;
};

// Parses the line-oriented key-value format described in the README.
// `name` is used in diagnostics.
SweepConfig parse_config(std::istream& in, const std::string& name);
SweepConfig load_config(const std::string& path);

enum class SweepMode { Both, AnalyticOnly, SimOnly };

struct SweepRow {
    double mu_db = 0.0;
    int modulation = 0;
    int n_hops = 0;
    int pilot_count = 0; // 0 = perfect CSI

    bool has_analytic = false;
    double ber_analytic = 0.0;

    bool has_sim = false;
    double ber_sim = 0.0;
    double sim_std_error = 0.0;
    double interference_exceedance = 0.0;
    std::int64_t bits = 0;
    std::int64_t errors = 0;

    std::string status = "ok";
};

// Evaluates the whole grid. Points run concurrently on cfg.streams workers;
// rows come back in deterministic grid order (modulation, hops, pilots, mu).
// Per-point failures are recorded in the row's status and do not abort the
// sweep.
std::vector<SweepRow> run_sweep(const SweepConfig& cfg,
                                SweepMode mode = SweepMode::Both);

// CSV with the fixed header
// mu_db,M,n_hops,L_p,ber_analytic,ber_sim,sim_stderr,bits,errors,intf_exceedance,status
// and shortest round-trip decimal floats. Skipped values are empty cells.
void write_csv(std::span<const SweepRow> rows, std::ostream& out);
void write_csv(std::span<const SweepRow> rows, const std::string& path);

// Companion gnuplot script plotting BER against mu for every curve group in
// the given CSV.
void write_gnuplot_script(const SweepConfig& cfg, const std::string& csv_path,
                          const std::string& script_path);

} // namespace cogber

#endif
