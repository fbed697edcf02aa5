// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "lqg/common.hpp"

namespace lqg {

/// Field snapshot: magic "LQGF", u32 version, u32 point count, then the
/// h values and the mu weights as little-endian doubles.
inline constexpr std::uint32_t kSnapshotVersion = 1;

void write_field_snapshot(const std::string& path, const Vec& h, const Vec& mu);

struct FieldSnapshot {
    Vec h;
    Vec mu;
    std::uint32_t version = 0;
};

FieldSnapshot read_field_snapshot(const std::string& path);

/// CSV file with a first comment line carrying run metadata, then a
/// header row. Numeric cells are printed with round-trip precision.
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::string& comment,
              const std::string& header);

    void row(const std::vector<std::string>& cells);
    void comment(const std::string& text);
    static std::string num(double v);

  private:
    std::ofstream out_;
};

struct SpectrumCsv {
    std::vector<double> lambdas;
    double mu_total = 0.0;
    double gamma = 0.0;
    std::string run_id;
};

SpectrumCsv read_spectrum_csv(const std::string& path);

/// FNV-1a hash, the stable fingerprint used for run ids and config
/// hashes in output metadata.
std::uint64_t fnv1a(const std::string& text);
std::string hex64(std::uint64_t value);

}  // namespace lqg
