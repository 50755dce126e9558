// qpc: construct, simulate, and analyze CSS quantum polar codes from the
// command line. Every command is deterministic given its flags and seed.
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpc/analysis.hpp"
#include "qpc/css.hpp"
#include "qpc/sim.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDomainError = 1;
constexpr int kExitUsageError = 2;

double parse_beta(const std::string& text) {
    if (text == "2^(1/4)") return std::pow(2.0, 0.25);
    std::size_t pos = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw CLI::ValidationError("--beta", "expected a decimal or the literal 2^(1/4)");
    }
    if (pos != text.size())
        throw CLI::ValidationError("--beta", "expected a decimal or the literal 2^(1/4)");
    return value;
}

struct CodeFlags {
    int n = 0;
    int k = 0;
    int kx = 0;
    int kz = 0;
    std::string construction = "pw";
    std::string beta_text;
    int q1_index = -1;

    void add_to(CLI::App* cmd, bool need_rate) {
        cmd->add_option("--n", n, "log2 of the blocklength N")->required();
        if (need_rate) {
            cmd->add_option("--k", k, "logical qubits (symmetric: Kx = Kz = (N + k) / 2)");
            cmd->add_option("--kx", kx, "X-basis information set size");
            cmd->add_option("--kz", kz, "Z-basis information set size");
        }
        cmd->add_option("--construction", construction,
                        "row ranking rule: pw, hpw, rm, or q1 (default pw)")
            ->check(CLI::IsMember({"pw", "hpw", "rm", "q1"}));
        cmd->add_option("--beta", beta_text,
                        "pw radix, decimal or the literal 2^(1/4) (default 2^(1/4))");
        cmd->add_option("--q1-index", q1_index, "information row index for the q1 construction");
    }

    qpc::QuantumPolarCode build() const {
        const int N = 1 << n;
        const qpc::ConstructionKind kind = qpc::construction_kind_from_string(construction);
        if (kind == qpc::ConstructionKind::Q1) {
            if (q1_index < 0) throw std::invalid_argument("q1 construction requires --q1-index");
            return qpc::build_q1_qpc(n, q1_index);
        }

        qpc::ConstructionSpec spec;
        switch (kind) {
            case qpc::ConstructionKind::PW: {
                double beta = beta_text.empty() ? std::pow(2.0, 0.25) : parse_beta(beta_text);
                if (beta > 2.0) {
                    std::cerr << "warning: beta " << beta
                              << " behaves identically to 2; clamping to 2\n";
                    beta = 2.0;
                }
                spec = qpc::ConstructionSpec::pw(beta);
                break;
            }
            case qpc::ConstructionKind::HPW:
                spec = qpc::ConstructionSpec::hpw();
                break;
            case qpc::ConstructionKind::RM:
                spec = qpc::ConstructionSpec::rm();
                break;
            case qpc::ConstructionKind::Q1:
                break;  // handled above
        }

        int use_kx = kx, use_kz = kz;
        if (use_kx == 0 && use_kz == 0) {
            if (k <= 0) throw std::invalid_argument("give --k or both --kx and --kz");
            if ((N + k) % 2 != 0)
                throw std::invalid_argument("symmetric rate requires N + k even");
            use_kx = use_kz = (N + k) / 2;
        } else if (use_kx == 0 || use_kz == 0) {
            throw std::invalid_argument("--kx and --kz must be given together");
        }
        return qpc::build_qpc(n, use_kx, use_kz, spec);
    }
};

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path);
    if (!f) throw std::runtime_error("cannot open output file: " + out_path);
    f << text;
}

int cmd_construct(const CodeFlags& flags, const std::string& out_path) {
    const qpc::QuantumPolarCode code = flags.build();
    std::ostringstream summary;
    summary << "N=" << code.N << " Kx=" << code.Kx << " Kz=" << code.Kz << " K=" << code.K()
            << "\nlogical:";
    for (int i : code.logical) summary << ' ' << i;
    summary << "\n|frozen_x|=" << code.frozen_x.size() << " |frozen_z|=" << code.frozen_z.size()
            << "\nrow_weight_bound=" << qpc::row_weight_bound(code) << '\n';
    if (out_path.empty()) {
        std::cout << qpc::qpc_to_json(code) << '\n';
        std::cerr << summary.str();
    } else {
        write_output(qpc::qpc_to_json(code) + "\n", out_path);
        std::cout << summary.str();
    }
    return kExitOk;
}

qpc::SimJob job_from_file(const std::string& path, std::optional<std::uint64_t> seed_flag,
                          std::optional<int> threads_flag, std::string& out_path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open job file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(f);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("job file is not valid JSON: ") + e.what());
    }

    static const std::vector<std::string> allowed = {
        "n",  "K",      "Kx",     "Kz",   "construction", "decoders",   "L",
        "p_grid", "trials", "seed", "error_type",   "threads",    "out"};
    for (const auto& [key, value] : j.items())
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw std::invalid_argument("job file: unknown key '" + key + "'");

    CodeFlags flags;
    flags.n = j.at("n").get<int>();
    if (j.contains("K")) flags.k = j.at("K").get<int>();
    if (j.contains("Kx")) flags.kx = j.at("Kx").get<int>();
    if (j.contains("Kz")) flags.kz = j.at("Kz").get<int>();
    if (j.contains("construction")) {
        const nlohmann::json& c = j.at("construction");
        static const std::vector<std::string> callowed = {"kind", "beta", "q1_index"};
        for (const auto& [key, value] : c.items())
            if (std::find(callowed.begin(), callowed.end(), key) == callowed.end())
                throw std::invalid_argument("job file: unknown construction key '" + key + "'");
        flags.construction = c.value("kind", "pw");
        if (c.contains("beta")) {
            if (c.at("beta").is_string())
                flags.beta_text = c.at("beta").get<std::string>();
            else
                flags.beta_text = std::to_string(c.at("beta").get<double>());
        }
        flags.q1_index = c.value("q1_index", -1);
    }

    qpc::SimJob job;
    job.qpc = flags.build();
    if (!j.contains("decoders")) throw std::invalid_argument("job file: missing 'decoders'");
    for (const auto& d : j.at("decoders"))
        job.decoders.push_back(qpc::decoder_kind_from_string(d.get<std::string>()));
    job.L = j.value("L", 1);
    if (!j.contains("p_grid")) throw std::invalid_argument("job file: missing 'p_grid'");
    job.p_grid = j.at("p_grid").get<std::vector<double>>();
    if (!j.contains("trials")) throw std::invalid_argument("job file: missing 'trials'");
    job.trials = j.at("trials").get<long long>();
    if (seed_flag) {
        job.master_seed = *seed_flag;
    } else if (j.contains("seed")) {
        job.master_seed = j.at("seed").get<std::uint64_t>();
    } else {
        throw std::invalid_argument("no seed: give --seed or a 'seed' key in the job file");
    }
    job.error_type = qpc::error_type_from_string(j.value("error_type", "x"));
    job.threads = threads_flag.value_or(j.value("threads", 1));
    if (out_path.empty()) out_path = j.value("out", "");
    job.validate();
    return job;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CSS quantum polar code toolkit"};
    app.require_subcommand(1);

    // construct
    CodeFlags construct_flags;
    std::string construct_out;
    CLI::App* construct = app.add_subcommand("construct", "build a code and emit it as JSON");
    construct_flags.add_to(construct, true);
    construct->add_option("--out", construct_out, "write JSON here instead of stdout");

    // simulate
    std::string sim_job_path, sim_out;
    std::optional<std::uint64_t> sim_seed;
    std::optional<int> sim_threads;
    CLI::App* simulate = app.add_subcommand("simulate", "run a Monte Carlo job file, emit CSV");
    simulate->add_option("--job", sim_job_path, "JSON job file")->required();
    simulate->add_option("--seed", sim_seed, "master seed (overrides the job file)");
    simulate->add_option("--threads", sim_threads, "worker threads (results are invariant)");
    simulate->add_option("--out", sim_out, "CSV output path (default: job file's 'out' or stdout)");

    // analyze
    CLI::App* analyze = app.add_subcommand("analyze", "spectrum, distance, and q1 scans");
    analyze->require_subcommand(1);

    CodeFlags spectrum_flags;
    std::uint64_t spectrum_seed = 0;
    double spectrum_p = 0.05;
    int spectrum_list = 1024;
    bool spectrum_exhaustive = false;
    int spectrum_random = 0;
    std::string spectrum_syndrome, spectrum_out;
    CLI::App* spectrum = analyze->add_subcommand("spectrum", "per-class weight histograms");
    spectrum_flags.add_to(spectrum, true);
    spectrum->add_option("--seed", spectrum_seed, "seed for random syndromes")->required();
    spectrum->add_option("--p", spectrum_p, "flip probability biasing the list (default 0.05)");
    spectrum->add_option("--list", spectrum_list, "list size L (default 1024)");
    spectrum->add_flag("--exhaustive", spectrum_exhaustive, "exact enumeration (N <= 32)");
    spectrum->add_option("--syndrome", spectrum_syndrome, "explicit syndrome bits, e.g. 0110");
    spectrum->add_option("--random-syndromes", spectrum_random,
                         "number of uniform random syndromes (default: the zero syndrome only)");
    spectrum->add_option("--out", spectrum_out, "CSV output path");

    CodeFlags distance_flags;
    std::uint64_t distance_seed = 0;
    int distance_list = 4096;
    double distance_p = 0.05;
    std::string distance_out;
    CLI::App* distance = analyze->add_subcommand("distance", "row-weight bound and list search");
    distance_flags.add_to(distance, true);
    distance->add_option("--seed", distance_seed, "seed (recorded in the output)")->required();
    distance->add_option("--list", distance_list, "search list size L (default 4096)");
    distance->add_option("--p", distance_p, "flip probability biasing the list (default 0.05)");
    distance->add_option("--out", distance_out, "CSV output path");

    int q1_n = 0;
    std::vector<double> q1_p;
    long long q1_trials = 10000;
    std::uint64_t q1_seed = 0;
    int q1_threads = 1;
    std::string q1_out;
    CLI::App* q1scan = analyze->add_subcommand("q1scan", "single-qubit information-index scan");
    q1scan->add_option("--n", q1_n, "log2 of the blocklength N")->required();
    q1scan->add_option("--p", q1_p, "flip probabilities (repeatable)")->required();
    q1scan->add_option("--trials", q1_trials, "trials per (index, p) point (default 10000)");
    q1scan->add_option("--seed", q1_seed, "master seed")->required();
    q1scan->add_option("--threads", q1_threads, "worker threads (results are invariant)");
    q1scan->add_option("--out", q1_out, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsageError;
    }

    try {
        if (*construct) return cmd_construct(construct_flags, construct_out);

        if (*simulate) {
            qpc::SimJob job = job_from_file(sim_job_path, sim_seed, sim_threads, sim_out);
            const std::vector<qpc::SimPoint> points = qpc::estimate(job);
            write_output(qpc::sim_points_to_csv(job.qpc, points), sim_out);
            return kExitOk;
        }

        if (*spectrum) {
            const qpc::QuantumPolarCode code = spectrum_flags.build();
            const std::size_t syndrome_len = code.frozen_z.size();
            std::vector<qpc::BitBlock> syndromes;
            if (!spectrum_syndrome.empty()) {
                if (spectrum_syndrome.size() != syndrome_len)
                    throw std::invalid_argument("--syndrome must have one bit per Z-frozen row");
                qpc::BitBlock s;
                for (char c : spectrum_syndrome) {
                    if (c != '0' && c != '1')
                        throw std::invalid_argument("--syndrome must be a 0/1 string");
                    s.push_back(c == '1');
                }
                syndromes.push_back(std::move(s));
            } else if (spectrum_random > 0) {
                std::mt19937_64 rng(spectrum_seed);
                std::bernoulli_distribution bit(0.5);
                for (int k = 0; k < spectrum_random; ++k) {
                    qpc::BitBlock s(syndrome_len);
                    for (auto& b : s) b = bit(rng) ? 1 : 0;
                    syndromes.push_back(std::move(s));
                }
            } else {
                syndromes.emplace_back(syndrome_len, 0);
            }

            std::string csv;
            for (std::size_t id = 0; id < syndromes.size(); ++id) {
                qpc::ClassSpectrum sp;
                if (spectrum_exhaustive) {
                    sp = qpc::enumerate_cosets(code, syndromes[id]).spectrum;
                    sp.list_size = 0;
                } else {
                    sp = qpc::weight_spectrum(code, syndromes[id], spectrum_p, spectrum_list);
                }
                std::string block = qpc::spectrum_to_csv(sp, id, spectrum_seed);
                if (id > 0) block.erase(0, block.find('\n') + 1);  // keep one header
                csv += block;
            }
            write_output(csv, spectrum_out);
            return kExitOk;
        }

        if (*distance) {
            const qpc::QuantumPolarCode code = distance_flags.build();
            const qpc::DistanceReport report =
                qpc::distance_report(code, distance_list, distance_p);
            std::ostringstream os;
            os << "N,K,construction,row_weight_bound,search_min,list_size,seed\n"
               << code.N << ',' << code.K() << ',' << qpc::to_string(code.construction.kind) << ','
               << report.row_weight_bound << ',' << report.search_min << ','
               << report.search_list_size << ',' << distance_seed << '\n';
            write_output(os.str(), distance_out);
            return kExitOk;
        }

        if (*q1scan) {
            const std::vector<qpc::Q1ScanRow> rows =
                qpc::q1_scan(q1_n, q1_p, q1_trials, q1_seed, q1_threads);
            write_output(qpc::q1_scan_to_csv(rows), q1_out);
            return kExitOk;
        }
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsageError;
}
