#include "cogber/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "cogber/analytic_ber.hpp"
#include "cogber/simulator.hpp"

namespace cogber {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_tokens(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) {
        out.push_back(tok);
    }
    return out;
}

[[noreturn]] void fail_at(const std::string& name, int line, const std::string& msg) {
    throw ConfigError(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& tok, const std::string& name, int line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        fail_at(name, line, "expected a number, got '" + tok + "'");
    }
    return v;
}

long long parse_int(const std::string& tok, const std::string& name, int line) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        fail_at(name, line, "expected an integer, got '" + tok + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& tok, const std::string& name, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size()) {
        fail_at(name, line, "expected an unsigned integer, got '" + tok + "'");
    }
    return v;
}

Point parse_point(const std::string& value, const std::string& name, int line) {
    const auto toks = split_tokens(value);
    if (toks.size() != 2) {
        fail_at(name, line, "expected two coordinates");
    }
    return {parse_double(toks[0], name, line), parse_double(toks[1], name, line)};
}

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string sanitize_status(std::string s) {
    std::replace(s.begin(), s.end(), ',', ';');
    std::replace(s.begin(), s.end(), '\n', ' ');
    return s;
}

bool is_power_of_two(int n) { return n >= 1 && (n & (n - 1)) == 0; }

} // namespace

void SweepConfig::validate() const {
    std::vector<std::string> problems;
    if (mu_db_grid.empty()) {
        problems.push_back("mu_db grid is empty");
    }
    if (modulations.empty()) {
        problems.push_back("modulations grid is empty");
    }
    for (int m : modulations) {
        if (!is_power_of_two(m) || m < 2 || m > 1024) {
            problems.push_back("modulation order " + std::to_string(m) +
                               " is not a power of two in [2, 1024]");
        }
    }
    if (hop_counts.empty()) {
        problems.push_back("hops grid is empty");
    }
    if (pilot_grid.empty()) {
        problems.push_back("pilots grid is empty");
    }
    for (int lp : pilot_grid) {
        if (lp < 0) {
            problems.push_back("pilot count " + std::to_string(lp) + " is negative");
        }
    }
    try {
        topology.validate();
        for (int n : hop_counts) {
            if (n < 1 || static_cast<std::size_t>(n) > topology.hop_count()) {
                problems.push_back("hop count " + std::to_string(n) +
                                   " exceeds the relays available in the topology");
            }
        }
    } catch (const std::exception& e) {
        problems.push_back(e.what());
    }
    if (!(alpha > 0.0)) {
        problems.push_back("alpha must be positive");
    }
    if (block_length < 1) {
        problems.push_back("block_length must be >= 1");
    }
    if (min_bit_errors < 1) {
        problems.push_back("min_bit_errors must be >= 1");
    }
    if (max_blocks < 1) {
        problems.push_back("max_blocks must be >= 1");
    }
    if (streams < 1) {
        problems.push_back("streams must be >= 1");
    }
    if (output_path.empty()) {
        problems.push_back("output path is empty");
    }
    if (!problems.empty()) {
        std::string msg = "invalid sweep config:";
        for (const std::string& p : problems) {
            msg += "\n  - " + p;
        }
        throw ConfigError(msg);
    }
}

SweepConfig parse_config(std::istream& in, const std::string& name) {
    SweepConfig cfg;
    bool topology_given = false;
    Topology topo;
    enum class Section { Global, Topology, Mc } section = Section::Global;

    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) {
            raw = raw.substr(0, hash);
        }
        const std::string line = trim(raw);
        if (line.empty()) {
            continue;
        }

        if (line.front() == '[') {
            if (line == "[topology]") {
                section = Section::Topology;
                topology_given = true;
            } else if (line == "[mc]") {
                section = Section::Mc;
            } else {
                fail_at(name, line_no, "unknown section '" + line + "'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            fail_at(name, line_no, "expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty()) {
            fail_at(name, line_no, "empty value for '" + key + "'");
        }

        switch (section) {
        case Section::Global:
            if (key == "alpha") {
                cfg.alpha = parse_double(value, name, line_no);
            } else if (key == "mu_db") {
                cfg.mu_db_grid.clear();
                for (const auto& t : split_tokens(value)) {
                    cfg.mu_db_grid.push_back(parse_double(t, name, line_no));
                }
            } else if (key == "modulations") {
                cfg.modulations.clear();
                for (const auto& t : split_tokens(value)) {
                    cfg.modulations.push_back(
                        static_cast<int>(parse_int(t, name, line_no)));
                }
            } else if (key == "hops") {
                cfg.hop_counts.clear();
                for (const auto& t : split_tokens(value)) {
                    cfg.hop_counts.push_back(
                        static_cast<int>(parse_int(t, name, line_no)));
                }
            } else if (key == "pilots") {
                cfg.pilot_grid.clear();
                for (const auto& t : split_tokens(value)) {
                    if (t == "perfect") {
                        cfg.pilot_grid.push_back(0);
                    } else {
                        const long long lp = parse_int(t, name, line_no);
                        if (lp < 1) {
                            fail_at(name, line_no,
                                    "pilot count must be >= 1 or 'perfect'");
                        }
                        cfg.pilot_grid.push_back(static_cast<int>(lp));
                    }
                }
            } else if (key == "seed") {
                cfg.seed = parse_u64(value, name, line_no);
            } else if (key == "output") {
                cfg.output_path = value;
            } else {
                fail_at(name, line_no, "unknown key '" + key + "'");
            }
            break;
        case Section::Topology:
            if (key == "primary") {
                topo.primary = parse_point(value, name, line_no);
            } else if (key == "node") {
                topo.chain.push_back(parse_point(value, name, line_no));
            } else {
                fail_at(name, line_no, "unknown topology key '" + key + "'");
            }
            break;
        case Section::Mc:
            if (key == "block_length") {
                cfg.block_length = static_cast<int>(parse_int(value, name, line_no));
            } else if (key == "min_bit_errors") {
                cfg.min_bit_errors = parse_int(value, name, line_no);
            } else if (key == "max_blocks") {
                cfg.max_blocks = parse_int(value, name, line_no);
            } else if (key == "streams") {
                cfg.streams = static_cast<int>(parse_int(value, name, line_no));
            } else {
                fail_at(name, line_no, "unknown mc key '" + key + "'");
            }
            break;
        }
    }

    if (topology_given) {
        cfg.topology = topo;
    }
    cfg.validate();
    return cfg;
}

SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    return parse_config(in, path);
}

namespace {

void evaluate_point(const SweepConfig& cfg, SweepMode mode, SweepRow& row) {
    std::vector<std::string> flags;
    const double mu = std::pow(10.0, row.mu_db / 10.0);
    const CsiModel csi = row.pilot_count == 0
                             ? CsiModel(PerfectCsi{})
                             : CsiModel(EstimatorConfig{row.pilot_count, {}});

    try {
        const Topology sub = cfg.topology.with_hop_count(
            static_cast<std::size_t>(row.n_hops));
        if (mode != SweepMode::SimOnly) {
            const ModParams mod = make_mod_params(row.modulation);
            const auto hops = build_chain_params(sub, cfg.alpha, mu, csi);
            std::vector<double> per_hop;
            per_hop.reserve(hops.size());
            for (const HopParams& hp : hops) {
                double p = hop_ber(hp, mod);
                if (p > 0.5) {
                    flags.push_back("analytic_clamped");
                    p = 0.5;
                }
                per_hop.push_back(p);
            }
            row.ber_analytic = end_to_end_ber(per_hop);
            row.has_analytic = true;
        }
        if (mode != SweepMode::AnalyticOnly) {
            SimConfig sim;
            sim.topology = sub;
            sim.alpha = cfg.alpha;
            sim.mu = mu;
            sim.mod_order = row.modulation;
            sim.csi = csi;
            sim.block_length = cfg.block_length;
            sim.min_bit_errors = cfg.min_bit_errors;
            sim.max_blocks = cfg.max_blocks;
            sim.seed = cfg.seed;
            sim.streams = 1; // the sweep already runs points in parallel
            const BerEstimate est = estimate_ber(sim);
            row.ber_sim = est.ber;
            row.sim_std_error = est.std_error;
            row.interference_exceedance = est.interference_exceedance;
            row.bits = est.bits;
            row.errors = est.errors;
            row.has_sim = true;
            if (est.budget_exhausted) {
                flags.push_back("budget_exhausted");
            }
        }
    } catch (const std::exception& e) {
        flags.push_back(std::string("error: ") + e.what());
    }

    if (flags.empty()) {
        row.status = "ok";
    } else {
        std::string s;
        for (std::size_t i = 0; i < flags.size(); ++i) {
            if (i > 0) {
                s += ";";
            }
            s += flags[i];
        }
        row.status = sanitize_status(s);
    }
}

} // namespace

std::vector<SweepRow> run_sweep(const SweepConfig& cfg, SweepMode mode) {
    cfg.validate();

    std::vector<SweepRow> rows;
    for (int m : cfg.modulations) {
        for (int n : cfg.hop_counts) {
            for (int lp : cfg.pilot_grid) {
                for (double mu_db : cfg.mu_db_grid) {
                    SweepRow row;
                    row.mu_db = mu_db;
                    row.modulation = m;
                    row.n_hops = n;
                    row.pilot_count = lp;
                    rows.push_back(row);
                }
            }
        }
    }

    const int workers = std::clamp<int>(cfg.streams, 1,
                                        static_cast<int>(rows.size()));
    if (workers <= 1) {
        for (SweepRow& row : rows) {
            evaluate_point(cfg, mode, row);
        }
        return rows;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= rows.size()) {
                    return;
                }
                evaluate_point(cfg, mode, rows[i]);
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    return rows;
}

void write_csv(std::span<const SweepRow> rows, std::ostream& out) {
    out << "mu_db,M,n_hops,L_p,ber_analytic,ber_sim,sim_stderr,bits,errors,"
           "intf_exceedance,status\n";
    for (const SweepRow& r : rows) {
        out << format_double(r.mu_db) << ',' << r.modulation << ',' << r.n_hops
            << ',' << r.pilot_count << ',';
        if (r.has_analytic) {
            out << format_double(r.ber_analytic);
        }
        out << ',';
        if (r.has_sim) {
            out << format_double(r.ber_sim) << ',' << format_double(r.sim_std_error);
        } else {
            out << ',';
        }
        out << ',' << r.bits << ',' << r.errors << ',';
        if (r.has_sim) {
            out << format_double(r.interference_exceedance);
        }
        out << ',' << r.status << '\n';
    }
    if (!out) {
        throw std::ios_base::failure("write_csv: stream write failed");
    }
}

void write_csv(std::span<const SweepRow> rows, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::ios_base::failure("write_csv: cannot open '" + path + "'");
    }
    write_csv(rows, out);
    out.flush();
    if (!out) {
        throw std::ios_base::failure("write_csv: failed writing '" + path + "'");
    }
}

void write_gnuplot_script(const SweepConfig& cfg, const std::string& csv_path,
                          const std::string& script_path) {
    std::ofstream out(script_path);
    if (!out) {
        throw std::ios_base::failure("write_gnuplot_script: cannot open '" +
                                     script_path + "'");
    }
    out << "set datafile separator ','\n"
        << "set logscale y\n"
        << "set xlabel 'interference cap over noise density (dB)'\n"
        << "set ylabel 'bit error rate'\n"
        << "set key outside\n"
        << "set grid\n"
        << "plot \\\n";
    bool first = true;
    for (int m : cfg.modulations) {
        for (int n : cfg.hop_counts) {
            for (int lp : cfg.pilot_grid) {
                const std::string sel = "($2==" + std::to_string(m) +
                                        " && $3==" + std::to_string(n) +
                                        " && $4==" + std::to_string(lp) + ")";
                const std::string label =
                    std::to_string(m) + "-QAM N=" + std::to_string(n) +
                    (lp == 0 ? " perfect CSI" : " L_p=" + std::to_string(lp));
                if (!first) {
                    out << ", \\\n";
                }
                out << "  '" << csv_path << "' every ::1 using (" << sel
                    << " ? $1 : NaN):5 with lines title '" << label
                    << " analytic'";
                out << ", \\\n  '" << csv_path << "' every ::1 using (" << sel
                    << " ? $1 : NaN):6 with points title '" << label << " sim'";
                first = false;
            }
        }
    }
    out << "\npause -1\n";
    if (!out) {
        throw std::ios_base::failure("write_gnuplot_script: write failed");
    }
}

} // namespace cogber
