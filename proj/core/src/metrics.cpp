#include "affilab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace affilab {

double metric_imp(const std::vector<double>& design_dg, const std::vector<double>& wildtype_dg) {
    if (design_dg.empty()) throw std::invalid_argument("metric_imp: no designs");
    if (design_dg.size() != wildtype_dg.size()) {
        throw std::invalid_argument("metric_imp: design/wildtype size mismatch");
    }
    std::size_t improved = 0;
    for (std::size_t i = 0; i < design_dg.size(); ++i) {
        if (design_dg[i] < wildtype_dg[i]) ++improved;
    }
    return static_cast<double>(improved) / static_cast<double>(design_dg.size());
}

double metric_sim(const std::vector<std::vector<Sequence>>& designs_by_antigen,
                  const std::vector<std::uint32_t>& cdr_positions) {
    if (designs_by_antigen.size() < 2) throw std::invalid_argument("metric_sim: need at least 2 antigens");
    if (cdr_positions.empty()) throw std::invalid_argument("metric_sim: empty CDR set");
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < designs_by_antigen.size(); ++a) {
        for (std::size_t b = a + 1; b < designs_by_antigen.size(); ++b) {
            for (const Sequence& sa : designs_by_antigen[a]) {
                for (const Sequence& sb : designs_by_antigen[b]) {
                    std::size_t same = 0;
                    for (std::uint32_t p : cdr_positions) {
                        if (sa[p] == sb[p]) ++same;
                    }
                    total += static_cast<double>(same) / static_cast<double>(cdr_positions.size());
                    ++pairs;
                }
            }
        }
    }
    if (pairs == 0) throw std::invalid_argument("metric_sim: no cross-antigen design pairs");
    return total / static_cast<double>(pairs);
}

NatReport metric_nat(const std::vector<Sequence>& designs, const WorldTables& tables) {
    if (designs.empty()) throw std::invalid_argument("metric_nat: no designs");
    NatReport report;
    for (const Sequence& s : designs) {
        if (s.size() < 2) throw std::invalid_argument("metric_nat: sequence too short for transitions");
        double log_sum = 0.0;
        for (std::size_t i = 1; i < s.size(); ++i) {
            double p = tables.markov[s[i - 1]][s[i]];
            if (p < 1e-6) {
                p = 1e-6;
                report.floored = true;
            }
            log_sum += std::log(p);
        }
        const double perplexity = std::exp(-log_sum / static_cast<double>(s.size()));
        report.nat += 1.0 / perplexity;
    }
    report.nat /= static_cast<double>(designs.size());
    return report;
}

double median(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("median: empty input");
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) return values[mid];
    return 0.5 * (values[mid - 1] + values[mid]);
}

} // namespace affilab
