#include "sks/adaptive.hpp"

#include <numeric>
#include <stdexcept>

namespace sks {

uint64_t adaptive_bank_seed(uint64_t seed, int bank) {
    return mix64(seed, tag("adaptive.bank"), (uint64_t)bank);
}

SampledSubspace batch_adaptive_finalize(const StreamData& sd, int p, int bank_count,
                                        const std::vector<int>& round_sizes, double eps,
                                        double delta, uint64_t seed, const SamplerParams& prm,
                                        const OrthoBasis* initial) {
    long need = 0;
    for (int r : round_sizes) {
        if (r < 1) throw std::invalid_argument("batch_adaptive_finalize: round sizes must be >= 1");
        need += r;
    }
    if (need > bank_count)
        throw std::invalid_argument("batch_adaptive_finalize: schedule needs " +
                                    std::to_string(need) + " sampler banks but only " +
                                    std::to_string(bank_count) +
                                    " were allocated; raise the bank count");

    SampledSubspace out;
    out.basis = initial ? *initial : OrthoBasis(sd.d);
    out.requested = (int)need;

    int bank = 0;
    bool exhausted = false;
    for (int rs : round_sizes) {
        Projector proj = Projector::complement(out.basis);
        std::vector<RowVec> batch;
        double last_f = 1.0;
        for (int t = 0; t < rs; ++t, ++bank) {
            SampleOutcome oc =
                multi_sample(sd, proj, p, eps, delta, adaptive_bank_seed(seed, bank), prm);
            // absolute floor: residual mass is roundoff, the span is done
            if (oc.f_hat < 1e-12) {
                exhausted = true;
                break;
            }
            if (oc.ok) {
                out.indices.push_back(oc.index);
                out.rows.push_back(oc.noisy_row);
                batch.push_back(oc.noisy_row);
            } else {
                last_f = oc.f_hat;
            }
        }
        for (const auto& r : batch) out.basis.extend(r);
        if (exhausted) {
            out.rank_exhausted = true;
            break;
        }
        if (batch.empty()) {
            out.rank_exhausted = last_f < 1e-12;
            break;
        }
    }
    return out;
}

SampledSubspace adaptive_finalize(const StreamData& sd, int p, int k, double eps, double delta,
                                  uint64_t seed, const SamplerParams& prm) {
    std::vector<int> rounds((size_t)std::max(k, 0), 1);
    return batch_adaptive_finalize(sd, p, k, rounds, eps, delta, seed, prm);
}

}  // namespace sks
