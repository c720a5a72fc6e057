#include "affilab/world.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace affilab {

namespace {

void normalize3(double* v) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    v[0] /= n;
    v[1] /= n;
    v[2] /= n;
}

void cross3(const double* a, const double* b, double* out) {
    out[0] = a[1] * b[2] - a[2] * b[1];
    out[1] = a[2] * b[0] - a[0] * b[2];
    out[2] = a[0] * b[1] - a[1] * b[0];
}

} // namespace

Structure oracle_mean_structure(const Sequence& seq, const WorldTables& tables) {
    const std::size_t n = seq.size();
    Structure x(n);
    if (n == 1) return x;

    // Orthonormal frame: tangent t, normal nrm, binormal b.
    double t[3] = {1.0, 0.0, 0.0};
    double nrm[3] = {0.0, 1.0, 0.0};
    double b[3] = {0.0, 0.0, 1.0};

    // Bond 0 along +x.
    x.row(1)[0] = x.row(0)[0] + t[0];
    x.row(1)[1] = x.row(0)[1] + t[1];
    x.row(1)[2] = x.row(0)[2] + t[2];

    for (std::size_t i = 1; i + 1 <= n - 1; ++i) {
        // Window {i-1, i, i+1} is always in range for bonds 1..n-2.
        double theta = 0.0, phi = 0.0;
        for (std::size_t j = i - 1; j <= i + 1; ++j) {
            theta += tables.theta[seq[j]];
            phi += tables.phi[seq[j]];
        }
        theta /= 3.0;
        phi /= 3.0;

        const double ct = std::cos(theta), st = std::sin(theta);
        const double cp = std::cos(phi), sp = std::sin(phi);
        double d[3];
        for (int k = 0; k < 3; ++k) d[k] = ct * t[k] + st * (cp * nrm[k] + sp * b[k]);
        normalize3(d);

        x.row(i + 1)[0] = x.row(i)[0] + d[0];
        x.row(i + 1)[1] = x.row(i)[1] + d[1];
        x.row(i + 1)[2] = x.row(i)[2] + d[2];

        // Transport the frame: new normal is the old tangent's component
        // orthogonal to d; when the step is straight (theta = 0) the old
        // normal is already orthogonal and is kept as is.
        const double td = t[0] * d[0] + t[1] * d[1] + t[2] * d[2];
        double res[3] = {t[0] - td * d[0], t[1] - td * d[1], t[2] - td * d[2]};
        const double rn = std::sqrt(res[0] * res[0] + res[1] * res[1] + res[2] * res[2]);
        if (rn > 1e-12) {
            nrm[0] = res[0] / rn;
            nrm[1] = res[1] / rn;
            nrm[2] = res[2] / rn;
        } else {
            const double nd = nrm[0] * d[0] + nrm[1] * d[1] + nrm[2] * d[2];
            for (int k = 0; k < 3; ++k) nrm[k] -= nd * d[k];
            normalize3(nrm);
        }
        t[0] = d[0];
        t[1] = d[1];
        t[2] = d[2];
        cross3(t, nrm, b);
        normalize3(b);
    }
    return x;
}

Structure oracle_ensemble_sample(const Sequence& seq, double fluctuation_scale, Rng& rng,
                                 const WorldTables& tables) {
    if (fluctuation_scale < 0.0) throw std::invalid_argument("fluctuation_scale must be >= 0");
    Structure x = oracle_mean_structure(seq, tables);
    const std::size_t n = x.residues();

    // iid noise, then a 5-point moving average along the chain so that
    // displacements of nearby residues are correlated.
    std::vector<double> raw(3 * n);
    for (auto& v : raw) v = rng.gaussian();
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = (i >= 2) ? i - 2 : 0;
        const std::size_t hi = std::min(i + 2, n - 1);
        for (int k = 0; k < 3; ++k) {
            double s = 0.0;
            for (std::size_t j = lo; j <= hi; ++j) s += raw[3 * j + k];
            x.row(i)[k] += fluctuation_scale * s / static_cast<double>(hi - lo + 1);
        }
    }
    return x;
}

double binding_energy_given_structure(const ComplexLayout& layout, const Structure& x,
                                      double sigma_contact, const WorldTables& tables) {
    if (x.residues() != layout.total_length()) {
        throw std::invalid_argument("structure has " + std::to_string(x.residues()) +
                                    " residues, layout expects " + std::to_string(layout.total_length()));
    }
    if (sigma_contact <= 0.0) throw std::invalid_argument("sigma_contact must be > 0");
    const double inv2s2 = 1.0 / (2.0 * sigma_contact * sigma_contact);
    const std::size_t ag_off = layout.antigen_offset();
    double e = 0.0;
    for (auto p : layout.cdr_positions) {
        const std::uint8_t tp = layout.antibody[p];
        for (std::size_t q = 0; q < layout.antigen.size(); ++q) {
            const std::uint8_t tq = layout.antigen[q];
            const double d = distance(x, p, ag_off + q);
            e += tables.w[tp][tq] * std::exp(-d * d * inv2s2);
        }
    }
    return e;
}

double oracle_binding_energy(const ComplexLayout& layout, double sigma_contact,
                             const WorldTables& tables) {
    const Structure x = oracle_mean_structure(layout.full, tables);
    return binding_energy_given_structure(layout, x, sigma_contact, tables);
}

EnergyRecord noisy_binding_energy(std::uint32_t antigen_id, std::uint32_t antibody_id,
                                  const ComplexLayout& layout, const WorldConfig& world,
                                  const NoiseConfig& noise, Rng& rng, const WorldTables& tables) {
    EnergyRecord rec;
    rec.antigen_id = antigen_id;
    rec.antibody_id = antibody_id;
    rec.delta_g = oracle_binding_energy(layout, world.sigma_contact, tables);
    const bool outlier = rng.uniform() < noise.outlier_rate;
    if (outlier) {
        rec.delta_g_noisy = rec.delta_g + rng.uniform(-noise.outlier_magnitude, noise.outlier_magnitude);
        rec.is_outlier = true;
    } else {
        rec.delta_g_noisy = rec.delta_g + noise.gaussian_sigma * rng.gaussian();
        rec.is_outlier = false;
    }
    return rec;
}

Sequence sample_natural_antibody(int length, Rng& rng, const WorldTables& tables) {
    if (length < 1) throw std::invalid_argument("antibody length must be >= 1");
    std::vector<std::uint8_t> res(static_cast<std::size_t>(length));
    // Initial residue from the initial distribution, then Markov steps.
    double u = rng.uniform();
    int cur = kNumResidueTypes - 1;
    double acc = 0.0;
    for (int a = 0; a < kNumResidueTypes; ++a) {
        acc += tables.markov_init[a];
        if (u < acc) {
            cur = a;
            break;
        }
    }
    res[0] = static_cast<std::uint8_t>(cur);
    for (int i = 1; i < length; ++i) {
        u = rng.uniform();
        acc = 0.0;
        int nxt = kNumResidueTypes - 1;
        for (int a = 0; a < kNumResidueTypes; ++a) {
            acc += tables.markov[cur][a];
            if (u < acc) {
                nxt = a;
                break;
            }
        }
        res[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(nxt);
        cur = nxt;
    }
    return Sequence::from_indices(std::move(res));
}

Sequence sample_antigen(int length, Rng& rng) {
    if (length < 1) throw std::invalid_argument("antigen length must be >= 1");
    std::vector<std::uint8_t> res(static_cast<std::size_t>(length));
    for (auto& r : res) r = static_cast<std::uint8_t>(rng.below(kNumResidueTypes));
    return Sequence::from_indices(std::move(res));
}

ComplexLayout SequenceRegistry::layout_for(std::uint32_t antigen_id, std::uint32_t antibody_id) const {
    if (antibody_id >= antibodies.size()) {
        throw std::out_of_range("antibody id " + std::to_string(antibody_id) + " not in registry");
    }
    return layout_for_antibody(antigen_id, antibodies[antibody_id]);
}

ComplexLayout SequenceRegistry::layout_for_antibody(std::uint32_t antigen_id, const Sequence& antibody) const {
    if (antigen_id >= antigens.size()) {
        throw std::out_of_range("antigen id " + std::to_string(antigen_id) + " not in registry");
    }
    return make_complex(antibody, antigens[antigen_id], world.linker_repeats, world.cdr_positions);
}

Dataset generate_dataset(const WorldConfig& world, const DataConfig& data,
                         const NoiseConfig& noise, Rng& rng, const WorldTables& tables) {
    if (data.num_antibodies < 1 || data.num_antigens < 1) {
        throw std::invalid_argument("dataset needs at least one antibody and one antigen");
    }
    if (data.heldout_antigens < 0 || data.heldout_antigens >= data.num_antigens) {
        throw std::invalid_argument("heldout_antigens must be in [0, num_antigens)");
    }

    Dataset ds;
    ds.registry.world = world;

    Rng ab_rng = rng.child(1);
    Rng ag_rng = rng.child(2);
    Rng noise_rng = rng.child(3);
    Rng label_rng = rng.child(4);

    for (int i = 0; i < data.num_antibodies; ++i) {
        ds.registry.antibodies.push_back(sample_natural_antibody(world.antibody_length, ab_rng, tables));
    }
    for (int i = 0; i < data.num_antigens; ++i) {
        ds.registry.antigens.push_back(sample_antigen(world.antigen_length, ag_rng));
    }

    const int first_heldout = data.num_antigens - data.heldout_antigens;
    for (int i = 0; i < data.num_antigens; ++i) {
        (i < first_heldout ? ds.train_antigens : ds.heldout_antigens).push_back(static_cast<std::uint32_t>(i));
    }

    ds.records.reserve(static_cast<std::size_t>(data.num_antigens) * data.num_antibodies);
    for (std::uint32_t i = 0; i < static_cast<std::uint32_t>(data.num_antigens); ++i) {
        for (std::uint32_t j = 0; j < static_cast<std::uint32_t>(data.num_antibodies); ++j) {
            const ComplexLayout layout = ds.registry.layout_for(i, j);
            ds.records.push_back(noisy_binding_energy(i, j, layout, world, noise, noise_rng, tables));
        }
    }

    // Exact labels on (train antigen, antibody) pairs, without replacement.
    const std::uint64_t pool = static_cast<std::uint64_t>(ds.train_antigens.size()) *
                               static_cast<std::uint64_t>(data.num_antibodies);
    if (static_cast<std::uint64_t>(data.num_labeled) > pool) {
        throw std::invalid_argument("num_labeled " + std::to_string(data.num_labeled) +
                                    " exceeds train pair pool " + std::to_string(pool));
    }
    auto picks = label_rng.sample_without_replacement(pool, static_cast<std::uint64_t>(data.num_labeled));
    std::sort(picks.begin(), picks.end());
    for (auto flat : picks) {
        const std::uint32_t i = ds.train_antigens[flat / data.num_antibodies];
        const std::uint32_t j = static_cast<std::uint32_t>(flat % data.num_antibodies);
        const double dg = ds.records[static_cast<std::size_t>(i) * data.num_antibodies + j].delta_g;
        ds.labels.push_back(LabeledPair{i, j, dg});
    }
    return ds;
}

} // namespace affilab
