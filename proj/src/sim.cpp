#include "qpc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

namespace qpc {

std::string to_string(DecoderKind kind) {
    switch (kind) {
        case DecoderKind::SC: return "sc";
        case DecoderKind::SclFrame: return "scl_frame";
        case DecoderKind::SclE: return "scl_e";
        case DecoderKind::SclC: return "scl_c";
        case DecoderKind::MWD: return "mwd";
        case DecoderKind::MLD: return "mld";
    }
    throw std::logic_error("unknown DecoderKind");
}

DecoderKind decoder_kind_from_string(const std::string& s) {
    if (s == "sc") return DecoderKind::SC;
    if (s == "scl_frame") return DecoderKind::SclFrame;
    if (s == "scl_e") return DecoderKind::SclE;
    if (s == "scl_c") return DecoderKind::SclC;
    if (s == "mwd") return DecoderKind::MWD;
    if (s == "mld") return DecoderKind::MLD;
    throw std::invalid_argument("unknown decoder: " + s);
}

std::string to_string(ErrorType type) {
    switch (type) {
        case ErrorType::X: return "x";
        case ErrorType::Z: return "z";
        case ErrorType::Both: return "both";
    }
    throw std::logic_error("unknown ErrorType");
}

ErrorType error_type_from_string(const std::string& s) {
    if (s == "x") return ErrorType::X;
    if (s == "z") return ErrorType::Z;
    if (s == "both") return ErrorType::Both;
    throw std::invalid_argument("unknown error type: " + s);
}

void SimJob::validate() const {
    if (decoders.empty()) throw std::invalid_argument("SimJob: no decoders requested");
    if (p_grid.empty()) throw std::invalid_argument("SimJob: empty p grid");
    for (double p : p_grid)
        if (!(p > 0.0 && p < 0.5)) throw std::invalid_argument("SimJob: each p must lie in (0, 0.5)");
    if (trials < 1) throw std::invalid_argument("SimJob: trials must be at least 1");
    if (L < 1) throw std::invalid_argument("SimJob: list size must be at least 1");
    for (DecoderKind d : decoders)
        if ((d == DecoderKind::MWD || d == DecoderKind::MLD) && qpc.N > 32)
            throw std::invalid_argument("SimJob: exact decoders require N <= 32");
}

double SimPoint::standard_error() const {
    const double p_hat = estimate();
    return std::sqrt(p_hat * (1.0 - p_hat) / trials);
}

namespace {

constexpr std::uint64_t kSaltNoiseX = 1;
constexpr std::uint64_t kSaltNoiseZ = 2;
constexpr std::uint64_t kSaltTieX = 3;
constexpr std::uint64_t kSaltTieZ = 4;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_key(std::uint64_t master_seed, int p_index, long long trial_index,
                        std::uint64_t stream_salt) {
    std::uint64_t h = splitmix64(master_seed ^ static_cast<std::uint64_t>(p_index));
    h = splitmix64(h ^ static_cast<std::uint64_t>(trial_index));
    return splitmix64(h ^ stream_salt);
}

// Per-thread decoder state; SclDecoder instances are reusable but not shareable.
struct TrialContext {
    const SimJob& job;
    ClassicalPolarCode code_x;                 // decodes X noise
    QuantumPolarCode qpc_m;                    // mirror, decodes Z noise
    ClassicalPolarCode code_z;
    std::unique_ptr<SclDecoder> scl_x, scl_z;  // list size job.L
    std::unique_ptr<SclDecoder> sc_x, sc_z;    // list size 1
    bool need_list = false, need_sc = false, need_exact = false;

    explicit TrialContext(const SimJob& j) : job(j), code_x(j.qpc.z_code()) {
        for (DecoderKind d : job.decoders) {
            if (d == DecoderKind::SC) need_sc = true;
            else if (d == DecoderKind::MWD || d == DecoderKind::MLD) need_exact = true;
            else need_list = true;
        }
        const bool side_z = job.error_type != ErrorType::X;
        if (side_z) {
            qpc_m = mirror(job.qpc);
            code_z = qpc_m.z_code();
        }
        if (need_list) {
            scl_x = std::make_unique<SclDecoder>(code_x, job.L);
            if (side_z) scl_z = std::make_unique<SclDecoder>(code_z, job.L);
        }
        if (need_sc) {
            sc_x = std::make_unique<SclDecoder>(code_x, 1);
            if (side_z) sc_z = std::make_unique<SclDecoder>(code_z, 1);
        }
    }
};

DecodeList syndrome_decode(SclDecoder& dec, const ClassicalPolarCode& code,
                           const BitBlock& syndrome, double p) {
    BitBlock frozen(code.N, 0);
    for (std::size_t j = 0; j < syndrome.size(); ++j) frozen[code.frozen_set[j]] = syndrome[j];
    const std::vector<double> llrs(code.N, bsc_llr(0, p));
    return dec.decode_with_frozen(llrs, frozen);
}

// Outcomes for one basis. Accumulates with operator|= into the Both mode.
void run_side(TrialContext& ctx, const QuantumPolarCode& qpc, const ClassicalPolarCode& code,
              SclDecoder* scl, SclDecoder* sc, const BitBlock& noise, double p,
              std::uint64_t tie_key, std::vector<TrialOutcome>& out) {
    const BitBlock syndrome = x_syndrome(qpc, noise);

    DecodeList list;
    if (ctx.need_list) list = syndrome_decode(*scl, code, syndrome, p);
    DecodeList sc_list;
    if (ctx.need_sc) sc_list = syndrome_decode(*sc, code, syndrome, p);
    CosetEnumeration enumeration;
    if (ctx.need_exact) enumeration = enumerate_cosets(qpc, syndrome);

    auto judge = [&](const BitBlock& correction, TrialOutcome& o) {
        if (correction != noise) o.frame_error = true;
        if (logical_x_error(qpc, noise, correction)) o.logical_error = true;
    };

    for (std::size_t k = 0; k < ctx.job.decoders.size(); ++k) {
        TieRng tie(tie_key);
        switch (ctx.job.decoders[k]) {
            case DecoderKind::SC:
                judge(sc_list.entries.front().c, out[k]);
                break;
            case DecoderKind::SclFrame:
                judge(list.entries.front().c, out[k]);
                break;
            case DecoderKind::SclE:
                judge(scl_e_decide(qpc, list, tie).correction, out[k]);
                break;
            case DecoderKind::SclC:
                judge(scl_c_decide(qpc, list, p, tie).correction, out[k]);
                break;
            case DecoderKind::MWD: {
                TieRng r(tie_key);
                judge(exact_mwd(qpc, syndrome, r).correction, out[k]);
                break;
            }
            case DecoderKind::MLD: {
                TieRng r(tie_key);
                judge(exact_mld(qpc, syndrome, p, r).correction, out[k]);
                break;
            }
        }
    }
}

std::vector<TrialOutcome> run_trial_with_context(TrialContext& ctx, double p, int p_index,
                                                 long long trial_index) {
    const SimJob& job = ctx.job;
    std::vector<TrialOutcome> out(job.decoders.size());

    if (job.error_type != ErrorType::Z) {
        std::mt19937_64 noise_rng(trial_key(job.master_seed, p_index, trial_index, kSaltNoiseX));
        const BitBlock noise = sample_bsc(job.qpc.N, p, noise_rng);
        run_side(ctx, job.qpc, ctx.code_x, ctx.scl_x.get(), ctx.sc_x.get(), noise, p,
                 trial_key(job.master_seed, p_index, trial_index, kSaltTieX), out);
    }
    if (job.error_type != ErrorType::X) {
        std::mt19937_64 noise_rng(trial_key(job.master_seed, p_index, trial_index, kSaltNoiseZ));
        // Z noise on the code is X noise on the mirror, with indices reversed.
        const BitBlock noise = reversed(sample_bsc(job.qpc.N, p, noise_rng));
        run_side(ctx, ctx.qpc_m, ctx.code_z, ctx.scl_z.get(), ctx.sc_z.get(), noise, p,
                 trial_key(job.master_seed, p_index, trial_index, kSaltTieZ), out);
    }
    return out;
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t master_seed, int p_index, long long trial_index,
                          std::uint64_t stream_salt) {
    return std::mt19937_64(trial_key(master_seed, p_index, trial_index, stream_salt));
}

BitBlock sample_bsc(int N, double p, std::mt19937_64& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("sample_bsc: p must lie in [0, 1]");
    std::bernoulli_distribution flip(p);
    BitBlock e(N);
    for (int i = 0; i < N; ++i) e[i] = flip(rng) ? 1 : 0;
    return e;
}

std::vector<TrialOutcome> run_trial(const SimJob& job, double p, int p_index,
                                    long long trial_index) {
    job.validate();
    TrialContext ctx(job);
    return run_trial_with_context(ctx, p, p_index, trial_index);
}

std::vector<SimPoint> estimate(const SimJob& job) {
    job.validate();
    const int num_threads = std::max(1, job.threads);
    const std::size_t D = job.decoders.size();

    std::vector<SimPoint> points;
    for (int pi = 0; pi < static_cast<int>(job.p_grid.size()); ++pi) {
        const double p = job.p_grid[pi];

        std::vector<std::vector<long long>> frame(num_threads, std::vector<long long>(D, 0));
        std::vector<std::vector<long long>> logical(num_threads, std::vector<long long>(D, 0));
        auto worker = [&](int tid) {
            TrialContext ctx(job);
            for (long long t = tid; t < job.trials; t += num_threads) {
                const std::vector<TrialOutcome> out = run_trial_with_context(ctx, p, pi, t);
                for (std::size_t k = 0; k < D; ++k) {
                    frame[tid][k] += out[k].frame_error;
                    logical[tid][k] += out[k].logical_error;
                }
            }
        };
        if (num_threads == 1) {
            worker(0);
        } else {
            std::vector<std::thread> pool;
            for (int tid = 0; tid < num_threads; ++tid) pool.emplace_back(worker, tid);
            for (auto& th : pool) th.join();
        }

        for (std::size_t k = 0; k < D; ++k) {
            SimPoint pt;
            pt.p = p;
            pt.decoder = job.decoders[k];
            pt.L = job.L;
            pt.trials = job.trials;
            pt.seed = job.master_seed;
            for (int tid = 0; tid < num_threads; ++tid) {
                pt.frame_errors += frame[tid][k];
                pt.logical_errors += logical[tid][k];
            }
            points.push_back(pt);
        }
    }
    return points;
}

double combined_rate(double p_x, double p_z) {
    if (!(p_x >= 0.0 && p_x <= 1.0 && p_z >= 0.0 && p_z <= 1.0))
        throw std::domain_error("combined_rate: rates must lie in [0, 1]");
    return 1.0 - (1.0 - p_x) * (1.0 - p_z);
}

namespace {

std::string construction_beta_field(const ConstructionSpec& spec) {
    if (spec.kind != ConstructionKind::PW) return "";
    std::ostringstream os;
    os.precision(12);
    os << spec.beta;
    return os.str();
}

}  // namespace

std::string sim_points_to_csv(const QuantumPolarCode& qpc, const std::vector<SimPoint>& points) {
    std::ostringstream os;
    os.precision(12);
    os << "N,K,Kx,Kz,construction,beta,decoder,L,p,trials,logical_errors,P_L,stderr,seed\n";
    for (const SimPoint& pt : points) {
        os << qpc.N << ',' << qpc.K() << ',' << qpc.Kx << ',' << qpc.Kz << ','
           << to_string(qpc.construction.kind) << ',' << construction_beta_field(qpc.construction)
           << ',' << to_string(pt.decoder) << ',' << pt.L << ',' << pt.p << ',' << pt.trials << ','
           << pt.logical_errors << ',' << pt.estimate() << ',' << pt.standard_error() << ','
           << pt.seed << '\n';
    }
    return os.str();
}

std::string sim_points_to_json(const QuantumPolarCode& qpc, const std::vector<SimPoint>& points) {
    nlohmann::json rows = nlohmann::json::array();
    for (const SimPoint& pt : points) {
        nlohmann::json r;
        r["N"] = qpc.N;
        r["K"] = qpc.K();
        r["Kx"] = qpc.Kx;
        r["Kz"] = qpc.Kz;
        r["construction"] = to_string(qpc.construction.kind);
        r["decoder"] = to_string(pt.decoder);
        r["L"] = pt.L;
        r["p"] = pt.p;
        r["trials"] = pt.trials;
        r["logical_errors"] = pt.logical_errors;
        r["P_L"] = pt.estimate();
        r["stderr"] = pt.standard_error();
        r["seed"] = pt.seed;
        rows.push_back(r);
    }
    return rows.dump(2);
}

}  // namespace qpc
