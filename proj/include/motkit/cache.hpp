#pragma once

// On-disk cache of indecomposable Soergel modules: one versioned JSON file
// per (type, rank, prime, word), written atomically (temp file + rename) so
// concurrent processes sharing a cache directory stay consistent. Records
// with a different schema version or unreadable content are ignored with a
// warning and recomputed.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <json.hpp>

#include "motkit/coinv.hpp"
#include "motkit/smod.hpp"

namespace motkit::cache {

constexpr int kSchema = 1;

inline std::string word_key(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::string s;
  for (int g : word) s += "s" + std::to_string(g + 1);
  return s;
}

inline std::string record_filename(const coxeter::RootDatum& datum, long long prime,
                                   const std::vector<int>& word) {
  return datum.type_string() + "-p" + std::to_string(prime) + "-" + word_key(word) + ".json";
}

inline nlohmann::json matrix_to_json(const fp::Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json record_to_json(const smod::IndecompRecord& rec, const coxeter::RootDatum& datum) {
  nlohmann::json j;
  j["schema"] = kSchema;
  j["type"] = std::string(1, datum.letter());
  j["rank"] = datum.rank();
  j["prime"] = rec.prime;
  nlohmann::json word = nlohmann::json::array();
  for (int g : rec.word) word.push_back(g + 1);
  j["word"] = std::move(word);
  nlohmann::json dims = nlohmann::json::array();
  for (auto& [d, n] : rec.module.dims()) dims.push_back({d, n});
  j["dims"] = std::move(dims);
  nlohmann::json action = nlohmann::json::array();
  for (auto& [d, n] : rec.module.dims()) {
    nlohmann::json mats = nlohmann::json::array();
    for (int i = 0; i < datum.rank(); ++i) mats.push_back(matrix_to_json(rec.module.action(i, d)));
    action.push_back({d, std::move(mats)});
  }
  j["action"] = std::move(action);
  nlohmann::json gdim = nlohmann::json::array();
  for (auto& [k, c] : rec.gdim.terms()) gdim.push_back({k, c});
  nlohmann::json ed = nlohmann::json::array();
  for (auto& [k, c] : rec.end_dims) ed.push_back({k, c});
  j["fingerprint"] = {{"gdim", std::move(gdim)}, {"end_dims", std::move(ed)}};
  return j;
}

inline std::optional<smod::IndecompRecord> record_from_json(const nlohmann::json& j,
                                                            const coinv::CoinvariantAlgebra& alg) {
  try {
    if (!j.contains("schema") || j["schema"].get<int>() != kSchema) {
      std::cerr << "motkit: cache record with unsupported schema ignored\n";
      return std::nullopt;
    }
    const coxeter::RootDatum& datum = alg.datum();
    if (j["type"].get<std::string>() != std::string(1, datum.letter()) ||
        j["rank"].get<int>() != datum.rank() || j["prime"].get<long long>() != alg.prime())
      return std::nullopt;
    std::vector<int> word;
    for (auto& g : j["word"]) word.push_back(g.get<int>() - 1);
    std::map<int, int> dims;
    for (auto& e : j["dims"]) dims[e[0].get<int>()] = e[1].get<int>();
    std::map<int, std::vector<fp::Mat>> action;
    for (auto& e : j["action"]) {
      int d = e[0].get<int>();
      std::vector<fp::Mat> mats;
      for (auto& mj : e[1]) {
        int rows = static_cast<int>(mj.size());
        int cols = rows > 0 ? static_cast<int>(mj[0].size()) : 0;
        // a zero-row matrix still needs the right column count
        if (rows == 0) cols = dims.count(d) ? dims[d] : 0;
        fp::Mat m(rows, cols, alg.prime());
        for (int r = 0; r < rows; ++r)
          for (int c = 0; c < cols; ++c) m(r, c) = mj[r][c].get<long long>();
        mats.push_back(std::move(m));
      }
      action[d] = std::move(mats);
    }
    smod::GradedModule module(alg, std::move(dims), std::move(action), smod::RelationCheck::sampled);
    return smod::make_record(std::move(word), alg.prime(), module);
  } catch (const std::exception& e) {
    std::cerr << "motkit: unreadable cache record ignored (" << e.what() << ")\n";
    return std::nullopt;
  }
}

inline void write_atomic(const std::filesystem::path& target, const nlohmann::json& j) {
  std::filesystem::create_directories(target.parent_path());
  std::random_device rd;
  std::filesystem::path tmp =
      target.string() + ".tmp-" + std::to_string(static_cast<unsigned>(rd())) + "-" +
      std::to_string(static_cast<unsigned long long>(
          std::chrono::steady_clock::now().time_since_epoch().count()));
  {
    std::ofstream os(tmp);
    os << j.dump(2) << "\n";
    if (!os) throw std::runtime_error("cache write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

inline void store_record(const std::filesystem::path& dir, const coxeter::RootDatum& datum,
                         const smod::IndecompRecord& rec) {
  write_atomic(dir / record_filename(datum, rec.prime, rec.word), record_to_json(rec, datum));
}

inline std::optional<smod::IndecompRecord> load_record(const std::filesystem::path& dir,
                                                       const coinv::CoinvariantAlgebra& alg,
                                                       const std::vector<int>& word) {
  std::filesystem::path file = dir / record_filename(alg.datum(), alg.prime(), word);
  std::ifstream is(file);
  if (!is) return std::nullopt;
  nlohmann::json j;
  try {
    is >> j;
  } catch (const std::exception&) {
    std::cerr << "motkit: corrupted cache file ignored: " << file << "\n";
    return std::nullopt;
  }
  auto rec = record_from_json(j, alg);
  if (rec && rec->word != word) return std::nullopt;
  return rec;
}

}  // namespace motkit::cache
