#include "affilab/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace affilab {

namespace {

constexpr char kMagic[8] = {'A', 'L', 'A', 'B', 'C', 'K', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xFF);
    os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f64(std::ostream& os, double d) {
    put_u64(os, std::bit_cast<std::uint64_t>(d));
}

std::uint32_t get_u32(std::istream& is, const std::string& path) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) {
        throw std::runtime_error("checkpoint " + path + ": truncated");
    }
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

std::uint64_t get_u64(std::istream& is, const std::string& path) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) {
        throw std::runtime_error("checkpoint " + path + ": truncated");
    }
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
    return v;
}

} // namespace

void save_checkpoint(const std::string& path, const std::vector<NamedTensor>& tensors,
                     const std::map<std::string, std::string>& manifest) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint " + path + ": cannot open for writing");
    os.write(kMagic, 8);
    put_u32(os, kVersion);
    put_u32(os, static_cast<std::uint32_t>(tensors.size()));
    for (const auto& t : tensors) {
        put_u32(os, static_cast<std::uint32_t>(t.name.size()));
        os.write(t.name.data(), static_cast<std::streamsize>(t.name.size()));
        put_u32(os, static_cast<std::uint32_t>(t.dims.size()));
        std::uint64_t n = 1;
        for (auto d : t.dims) {
            put_u64(os, d);
            n *= d;
        }
        if (n != t.data.size()) {
            throw std::invalid_argument("checkpoint tensor " + t.name + ": dims do not match data size");
        }
        for (double v : t.data) put_f64(os, v);
    }
    if (!os) throw std::runtime_error("checkpoint " + path + ": write failed");
    os.close();

    std::ofstream ms(path + ".manifest.txt", std::ios::trunc);
    if (!ms) throw std::runtime_error("checkpoint " + path + ": cannot write manifest");
    for (const auto& [k, v] : manifest) ms << k << " = " << v << "\n";
}

std::vector<NamedTensor> load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint " + path + ": cannot open");
    char magic[8];
    if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
        throw std::runtime_error("checkpoint " + path + ": bad magic");
    }
    const std::uint32_t version = get_u32(is, path);
    if (version != kVersion) {
        throw std::runtime_error("checkpoint " + path + ": unsupported version " + std::to_string(version));
    }
    const std::uint32_t count = get_u32(is, path);
    std::vector<NamedTensor> tensors(count);
    for (auto& t : tensors) {
        const std::uint32_t name_len = get_u32(is, path);
        t.name.resize(name_len);
        if (!is.read(t.name.data(), name_len)) {
            throw std::runtime_error("checkpoint " + path + ": truncated");
        }
        const std::uint32_t rank = get_u32(is, path);
        t.dims.resize(rank);
        std::uint64_t n = 1;
        for (auto& d : t.dims) {
            d = get_u64(is, path);
            n *= d;
        }
        t.data.resize(n);
        for (auto& v : t.data) v = std::bit_cast<double>(get_u64(is, path));
    }
    return tensors;
}

std::map<std::string, std::string> load_manifest(const std::string& checkpoint_path) {
    std::ifstream is(checkpoint_path + ".manifest.txt");
    if (!is) throw std::runtime_error("manifest for " + checkpoint_path + ": cannot open");
    std::map<std::string, std::string> out;
    std::string line;
    while (std::getline(is, line)) {
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) continue;
        out[line.substr(0, eq)] = line.substr(eq + 3);
    }
    return out;
}

std::uint64_t fnv1a(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ULL;
    }
    return h;
}

} // namespace affilab
