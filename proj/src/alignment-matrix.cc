// src/alignment-matrix.cc

// Copyright 2026  wordisc authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "wordisc/alignment-matrix.h"

#include <cmath>
#include <fstream>
#include <iostream>

#include "json.hpp"
#include "wordisc/error.h"

namespace wordisc {

namespace {

constexpr double kAcceptedRowDeviation = 0.05;
constexpr double kSilentRowDeviation = 1e-4;

std::string Where(const std::string &id, std::size_t line_no) {
  return "utterance '" + id + "' (line " + std::to_string(line_no) + ")";
}

}  // namespace

AlignmentMatrix::AlignmentMatrix(std::string utterance_id, std::string language,
                                 TokenList source, PhonemeSeq target,
                                 std::vector<double> cells,
                                 double row_sum_tolerance)
    : utterance_id_(std::move(utterance_id)),
      language_(std::move(language)),
      source_(std::move(source)),
      target_(std::move(target)),
      cells_(std::move(cells)) {
  const std::string where = "matrix for utterance '" + utterance_id_ + "'";
  if (source_.empty()) throw DataError(where + ": no source tokens");
  if (target_.empty()) throw DataError(where + ": no target phonemes");
  if (cells_.size() != source_.size() * target_.size())
    throw DataError(where + ": " + std::to_string(cells_.size()) +
                    " cells for a " + std::to_string(target_.size()) + "x" +
                    std::to_string(source_.size()) + " matrix");
  for (std::size_t t = 0; t < num_rows(); ++t) {
    double sum = 0.0;
    for (double v : row(t)) {
      if (!std::isfinite(v) || v < 0.0)
        throw DataError(where + ": negative or non-finite probability in row " +
                        std::to_string(t));
      sum += v;
    }
    if (std::abs(sum - 1.0) > row_sum_tolerance)
      throw DataError(where + ": row " + std::to_string(t) + " sums to " +
                      std::to_string(sum));
  }
}

void WriteMatrices(std::span<const AlignmentMatrix> matrices, std::ostream &out) {
  for (const auto &m : matrices) {
    nlohmann::ordered_json obj;
    obj["id"] = m.utterance_id();
    obj["lang"] = m.language();
    obj["source"] = m.source();
    obj["target"] = m.target();
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t t = 0; t < m.num_rows(); ++t) {
      auto r = m.row(t);
      rows.push_back(std::vector<double>(r.begin(), r.end()));
    }
    obj["rows"] = std::move(rows);
    out << obj.dump() << '\n';
  }
}

void WriteMatrices(std::span<const AlignmentMatrix> matrices,
                   const std::string &path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write matrix file '" + path + "'");
  WriteMatrices(matrices, out);
}

std::vector<AlignmentMatrix> ReadMatrices(std::istream &in,
                                          MatrixReadReport *report) {
  std::vector<AlignmentMatrix> out;
  MatrixReadReport local;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const std::exception &e) {
      throw DataError("line " + std::to_string(line_no) + ": invalid JSON: " +
                      e.what());
    }
    std::string id = "?";
    try {
      id = obj.at("id").get<std::string>();
      auto lang = obj.at("lang").get<std::string>();
      auto source = obj.at("source").get<TokenList>();
      auto target = obj.at("target").get<PhonemeSeq>();
      const auto &rows = obj.at("rows");
      if (!rows.is_array())
        throw DataError(Where(id, line_no) + ": rows is not an array");
      if (rows.size() != target.size())
        throw DataError(Where(id, line_no) + ": " +
                        std::to_string(rows.size()) + " rows for " +
                        std::to_string(target.size()) + " target symbols");
      std::vector<double> cells;
      cells.reserve(rows.size() * source.size());
      for (std::size_t t = 0; t < rows.size(); ++t) {
        auto r = rows[t].get<std::vector<double>>();
        if (r.size() != source.size())
          throw DataError(Where(id, line_no) + ": row " + std::to_string(t) +
                          " has " + std::to_string(r.size()) +
                          " columns for " + std::to_string(source.size()) +
                          " source tokens");
        double sum = 0.0;
        for (double v : r) {
          if (!std::isfinite(v) || v < 0.0)
            throw DataError(Where(id, line_no) +
                            ": negative or non-finite weight in row " +
                            std::to_string(t));
          sum += v;
        }
        if (std::abs(sum - 1.0) > kAcceptedRowDeviation)
          throw DataError(Where(id, line_no) + ": row " + std::to_string(t) +
                          " sums to " + std::to_string(sum) +
                          ", outside the accepted 5% band");
        if (std::abs(sum - 1.0) > kSilentRowDeviation) ++local.rows_renormalized;
        for (double v : r) cells.push_back(v / sum);
      }
      out.emplace_back(std::move(id), std::move(lang), std::move(source),
                       std::move(target), std::move(cells));
    } catch (const nlohmann::json::exception &e) {
      throw DataError(Where(id, line_no) + ": " + e.what());
    }
  }
  local.matrices = out.size();
  if (report) *report = local;
  return out;
}

std::vector<AlignmentMatrix> ReadMatrices(const std::string &path,
                                          MatrixReadReport *report) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open matrix file '" + path + "'");
  try {
    return ReadMatrices(in, report);
  } catch (const DataError &e) {
    throw DataError(path + ": " + e.what());
  }
}

}  // namespace wordisc
