// SPDX-License-Identifier: Apache-2.0
#include "lqg/io.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <sstream>

namespace lqg {

namespace {

void put_u32(std::ofstream& out, std::uint32_t v) {
    std::array<char, 4> b{};
    for (int i = 0; i < 4; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b.data(), 4);
}

std::uint32_t get_u32(std::ifstream& in) {
    std::array<unsigned char, 4> b{};
    in.read(reinterpret_cast<char*>(b.data()), 4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    return v;
}

void put_f64(std::ofstream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    std::array<char, 8> b{};
    for (int i = 0; i < 8; ++i) b[static_cast<std::size_t>(i)] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(b.data(), 8);
}

double get_f64(std::ifstream& in) {
    std::array<unsigned char, 8> b{};
    in.read(reinterpret_cast<char*>(b.data()), 8);
    std::uint64_t bits = 0;
    for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[static_cast<std::size_t>(i)]) << (8 * i);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

}  // namespace

void write_field_snapshot(const std::string& path, const Vec& h, const Vec& mu) {
    if (h.size() != mu.size())
        throw ConfigError("write_field_snapshot: h and mu sizes differ");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("write_field_snapshot: cannot open " + path);
    out.write("LQGF", 4);
    put_u32(out, kSnapshotVersion);
    put_u32(out, static_cast<std::uint32_t>(h.size()));
    for (Eigen::Index i = 0; i < h.size(); ++i) put_f64(out, h[i]);
    for (Eigen::Index i = 0; i < mu.size(); ++i) put_f64(out, mu[i]);
    if (!out) throw NumericalError("write_field_snapshot: write failed for " + path);
}

FieldSnapshot read_field_snapshot(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("read_field_snapshot: cannot open " + path);
    std::array<char, 4> magic{};
    in.read(magic.data(), 4);
    if (std::memcmp(magic.data(), "LQGF", 4) != 0)
        throw ConfigError("read_field_snapshot: bad magic in " + path);
    FieldSnapshot snap;
    snap.version = get_u32(in);
    if (snap.version != kSnapshotVersion)
        throw ConfigError("read_field_snapshot: unsupported version in " + path);
    const std::uint32_t count = get_u32(in);
    snap.h.resize(count);
    snap.mu.resize(count);
    for (std::uint32_t i = 0; i < count; ++i) snap.h[static_cast<Eigen::Index>(i)] = get_f64(in);
    for (std::uint32_t i = 0; i < count; ++i) snap.mu[static_cast<Eigen::Index>(i)] = get_f64(in);
    if (!in) throw ConfigError("read_field_snapshot: truncated file " + path);
    return snap;
}

CsvWriter::CsvWriter(const std::string& path, const std::string& comment,
                     const std::string& header)
    : out_(path) {
    if (!out_) throw ConfigError("CsvWriter: cannot open " + path);
    out_ << "# " << comment << "\n" << header << "\n";
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << "\n";
}

void CsvWriter::comment(const std::string& text) { out_ << "# " << text << "\n"; }

std::string CsvWriter::num(double v) {
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

double metadata_value(const std::string& line, const std::string& key) {
    const auto pos = line.find(key + "=");
    if (pos == std::string::npos)
        throw ConfigError("spectrum CSV missing metadata key " + key);
    return std::stod(line.substr(pos + key.size() + 1));
}

}  // namespace

SpectrumCsv read_spectrum_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("read_spectrum_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty() || line[0] != '#')
        throw ConfigError("read_spectrum_csv: missing metadata comment in " + path);
    SpectrumCsv csv;
    csv.mu_total = metadata_value(line, "mu_total");
    csv.gamma = metadata_value(line, "gamma");
    const auto rid = line.find("run_id=");
    if (rid != std::string::npos) {
        const auto end = line.find(' ', rid);
        csv.run_id = line.substr(rid + 7, end == std::string::npos ? end : end - rid - 7);
    }
    if (!std::getline(in, line))
        throw ConfigError("read_spectrum_csv: missing header in " + path);
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw ConfigError("read_spectrum_csv: malformed row in " + path);
        csv.lambdas.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    }
    return csv;
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i) {
        s[static_cast<std::size_t>(i)] = digits[value & 0xf];
        value >>= 4;
    }
    return s;
}

}  // namespace lqg
