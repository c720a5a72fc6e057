#include "affilab/dataset_io.hpp"

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "affilab/checkpoint.hpp"
#include "affilab/csv.hpp"

namespace affilab {

namespace {

std::uint32_t parse_u32_cell(const std::string& file, const std::string& cell) {
    try {
        std::size_t used = 0;
        const unsigned long v = std::stoul(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw std::runtime_error(file + ": bad integer '" + cell + "'");
    }
}

double parse_double_cell(const std::string& file, const std::string& cell) {
    try {
        std::size_t used = 0;
        const double v = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(file + ": bad number '" + cell + "'");
    }
}

// Collects id-keyed sequences into a dense 0..n-1 vector; gaps or duplicates
// are malformed.
std::vector<Sequence> dense_by_id(const std::string& file,
                                  const std::map<std::uint32_t, Sequence>& by_id) {
    std::vector<Sequence> out;
    out.reserve(by_id.size());
    for (const auto& [id, seq] : by_id) {
        if (id != out.size()) throw std::runtime_error(file + ": ids are not contiguous from 0");
        out.push_back(seq);
    }
    return out;
}

} // namespace

void save_dataset(const std::string& dir, const Dataset& ds, const WorldTables& tables) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(dir) / "tables");

    CsvTable registry;
    registry.header = {"id", "role", "sequence"};
    for (std::size_t i = 0; i < ds.registry.antibodies.size(); ++i) {
        registry.rows.push_back({std::to_string(i), "antibody", ds.registry.antibodies[i].str()});
    }
    for (std::size_t i = 0; i < ds.registry.antigens.size(); ++i) {
        registry.rows.push_back({std::to_string(i), "antigen", ds.registry.antigens[i].str()});
    }
    write_csv((fs::path(dir) / "registry.csv").string(), registry);

    CsvTable energies;
    energies.header = {"antigen_id", "antibody_id", "delta_g", "delta_g_noisy", "is_outlier"};
    for (const auto& r : ds.records) {
        energies.rows.push_back({std::to_string(r.antigen_id), std::to_string(r.antibody_id),
                                 fmt17(r.delta_g), fmt17(r.delta_g_noisy),
                                 r.is_outlier ? "1" : "0"});
    }
    write_csv((fs::path(dir) / "energies.csv").string(), energies);

    CsvTable labels;
    labels.header = {"antigen_id", "antibody_id", "delta_g"};
    for (const auto& l : ds.labels) {
        labels.rows.push_back(
            {std::to_string(l.antigen_id), std::to_string(l.antibody_id), fmt17(l.delta_g)});
    }
    write_csv((fs::path(dir) / "labels.csv").string(), labels);

    CsvTable splits;
    splits.header = {"antigen_id", "split"};
    for (std::uint32_t ag : ds.train_antigens) splits.rows.push_back({std::to_string(ag), "train"});
    for (std::uint32_t ag : ds.heldout_antigens) {
        splits.rows.push_back({std::to_string(ag), "heldout"});
    }
    write_csv((fs::path(dir) / "splits.csv").string(), splits);

    const fs::path tdir = fs::path(dir) / "tables";
    write_matrix((tdir / "theta.txt").string(), 1, 20, tables.theta.data());
    write_matrix((tdir / "phi.txt").string(), 1, 20, tables.phi.data());
    write_matrix((tdir / "interaction.txt").string(), 20, 20, tables.w[0].data());
    write_matrix((tdir / "markov.txt").string(), 20, 20, tables.markov[0].data());
    write_matrix((tdir / "markov_init.txt").string(), 1, 20, tables.markov_init.data());
}

Dataset load_dataset(const std::string& dir, const WorldConfig& world) {
    namespace fs = std::filesystem;
    Dataset ds;
    ds.registry.world = world;

    const std::string registry_path = (fs::path(dir) / "registry.csv").string();
    const CsvTable registry = read_csv(registry_path);
    {
        const std::size_t id_col = registry.col("id");
        const std::size_t role_col = registry.col("role");
        const std::size_t seq_col = registry.col("sequence");
        std::map<std::uint32_t, Sequence> antibodies, antigens;
        for (const auto& row : registry.rows) {
            const std::uint32_t id = parse_u32_cell(registry_path, row.at(id_col));
            const Sequence seq(row.at(seq_col));
            const std::string& role = row.at(role_col);
            const bool inserted = role == "antibody" ? antibodies.emplace(id, seq).second
                                : role == "antigen"  ? antigens.emplace(id, seq).second
                                : throw std::runtime_error(registry_path + ": unknown role '" +
                                                           role + "'");
            if (!inserted) {
                throw std::runtime_error(registry_path + ": duplicate " + role + " id " +
                                         std::to_string(id));
            }
        }
        ds.registry.antibodies = dense_by_id(registry_path, antibodies);
        ds.registry.antigens = dense_by_id(registry_path, antigens);
    }
    for (const Sequence& ab : ds.registry.antibodies) {
        if (ab.size() != static_cast<std::size_t>(world.antibody_length)) {
            throw std::runtime_error(registry_path + ": antibody length " +
                                     std::to_string(ab.size()) + " contradicts the world config");
        }
    }
    for (const Sequence& ag : ds.registry.antigens) {
        if (ag.size() != static_cast<std::size_t>(world.antigen_length)) {
            throw std::runtime_error(registry_path + ": antigen length " +
                                     std::to_string(ag.size()) + " contradicts the world config");
        }
    }

    const std::string energies_path = (fs::path(dir) / "energies.csv").string();
    const CsvTable energies = read_csv(energies_path);
    {
        const std::size_t ag_col = energies.col("antigen_id");
        const std::size_t ab_col = energies.col("antibody_id");
        const std::size_t dg_col = energies.col("delta_g");
        const std::size_t noisy_col = energies.col("delta_g_noisy");
        const std::size_t out_col = energies.col("is_outlier");
        for (const auto& row : energies.rows) {
            EnergyRecord rec;
            rec.antigen_id = parse_u32_cell(energies_path, row.at(ag_col));
            rec.antibody_id = parse_u32_cell(energies_path, row.at(ab_col));
            rec.delta_g = parse_double_cell(energies_path, row.at(dg_col));
            rec.delta_g_noisy = parse_double_cell(energies_path, row.at(noisy_col));
            rec.is_outlier = row.at(out_col) == "1";
            ds.records.push_back(rec);
        }
    }

    const std::string labels_path = (fs::path(dir) / "labels.csv").string();
    const CsvTable labels = read_csv(labels_path);
    {
        const std::size_t ag_col = labels.col("antigen_id");
        const std::size_t ab_col = labels.col("antibody_id");
        const std::size_t dg_col = labels.col("delta_g");
        for (const auto& row : labels.rows) {
            ds.labels.push_back(LabeledPair{parse_u32_cell(labels_path, row.at(ag_col)),
                                            parse_u32_cell(labels_path, row.at(ab_col)),
                                            parse_double_cell(labels_path, row.at(dg_col))});
        }
    }

    const std::string splits_path = (fs::path(dir) / "splits.csv").string();
    const CsvTable splits = read_csv(splits_path);
    {
        const std::size_t ag_col = splits.col("antigen_id");
        const std::size_t split_col = splits.col("split");
        for (const auto& row : splits.rows) {
            const std::uint32_t ag = parse_u32_cell(splits_path, row.at(ag_col));
            const std::string& split = row.at(split_col);
            if (split == "train") {
                ds.train_antigens.push_back(ag);
            } else if (split == "heldout") {
                ds.heldout_antigens.push_back(ag);
            } else {
                throw std::runtime_error(splits_path + ": unknown split '" + split + "'");
            }
        }
        if (ds.train_antigens.size() + ds.heldout_antigens.size() != ds.registry.antigens.size()) {
            throw std::runtime_error(splits_path + ": split does not cover every antigen once");
        }
    }
    return ds;
}

std::uint64_t dataset_hash(const Dataset& ds) {
    std::string text;
    for (std::size_t i = 0; i < ds.registry.antibodies.size(); ++i) {
        text += "ab," + std::to_string(i) + "," + ds.registry.antibodies[i].str() + "\n";
    }
    for (std::size_t i = 0; i < ds.registry.antigens.size(); ++i) {
        text += "ag," + std::to_string(i) + "," + ds.registry.antigens[i].str() + "\n";
    }
    for (const auto& r : ds.records) {
        text += "rec," + std::to_string(r.antigen_id) + "," + std::to_string(r.antibody_id) + "," +
                fmt17(r.delta_g) + "," + fmt17(r.delta_g_noisy) + "," + (r.is_outlier ? "1" : "0") +
                "\n";
    }
    for (const auto& l : ds.labels) {
        text += "lab," + std::to_string(l.antigen_id) + "," + std::to_string(l.antibody_id) + "," +
                fmt17(l.delta_g) + "\n";
    }
    for (std::uint32_t ag : ds.train_antigens) text += "train," + std::to_string(ag) + "\n";
    for (std::uint32_t ag : ds.heldout_antigens) text += "heldout," + std::to_string(ag) + "\n";
    return fnv1a(text.data(), text.size());
}

std::vector<FlowTrainExample> build_flow_corpus(const SequenceRegistry& registry,
                                                const std::vector<std::uint32_t>& antigen_ids,
                                                int count, double fluctuation_scale, Rng& rng) {
    if (count < 1) throw std::invalid_argument("build_flow_corpus: count must be >= 1");
    if (antigen_ids.empty() || registry.antibodies.empty()) {
        throw std::invalid_argument("build_flow_corpus: empty registry slice");
    }
    std::vector<FlowTrainExample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::uint32_t ag = antigen_ids[rng.below(antigen_ids.size())];
        const auto ab = static_cast<std::uint32_t>(rng.below(registry.antibodies.size()));
        const ComplexLayout layout = registry.layout_for(ag, ab);
        out.push_back(FlowTrainExample{
            layout.full, oracle_ensemble_sample(layout.full, fluctuation_scale, rng)});
    }
    return out;
}

std::vector<IfExample> build_if_corpus(const SequenceRegistry& registry,
                                       const std::vector<std::uint32_t>& antigen_ids, int count,
                                       double fluctuation_scale, Rng& rng) {
    if (count < 1) throw std::invalid_argument("build_if_corpus: count must be >= 1");
    if (antigen_ids.empty() || registry.antibodies.empty()) {
        throw std::invalid_argument("build_if_corpus: empty registry slice");
    }
    std::vector<IfExample> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        const std::uint32_t ag = antigen_ids[rng.below(antigen_ids.size())];
        const auto ab = static_cast<std::uint32_t>(rng.below(registry.antibodies.size()));
        ComplexLayout layout = registry.layout_for(ag, ab);
        Structure x = oracle_ensemble_sample(layout.full, fluctuation_scale, rng);
        out.push_back(IfExample{std::move(x), std::move(layout)});
    }
    return out;
}

} // namespace affilab
