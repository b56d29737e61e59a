// Copyright 2026 The swcoref Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swcoref/scorer.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "swcoref/assignment.h"
#include "swcoref/errors.h"

namespace swcoref {

PRF MakePRF(double precision, double recall) {
  PRF prf{precision, recall, 0.0};
  if (precision + recall > 0.0) {
    prf.f1 = 2.0 * precision * recall / (precision + recall);
  }
  return prf;
}

namespace {

// Both partitions as clusters of dense mention indices.
struct Aligned {
  std::vector<std::vector<size_t>> key;
  std::vector<std::vector<size_t>> response;
  std::vector<size_t> key_of;       // mention -> key cluster
  std::vector<size_t> response_of;  // mention -> response cluster
  size_t mentions = 0;
};

std::vector<std::vector<size_t>> Group(const Partition &p,
                                       std::vector<size_t> &cluster_of) {
  std::unordered_map<std::string, size_t> index;
  std::vector<std::vector<size_t>> clusters;
  cluster_of.clear();
  size_t m = 0;
  for (const auto &[id, label] : p.assignment) {
    auto [it, inserted] = index.try_emplace(label, clusters.size());
    if (inserted) clusters.emplace_back();
    clusters[it->second].push_back(m);
    cluster_of.push_back(it->second);
    ++m;
  }
  return clusters;
}

Aligned Align(const Partition &key, const Partition &response) {
  bool same = key.assignment.size() == response.assignment.size();
  for (auto k = key.assignment.begin(), r = response.assignment.begin();
       same && k != key.assignment.end(); ++k, ++r) {
    same = k->first == r->first;
  }
  if (!same) {
    throw DataError("key and response cover different mention sets (" +
                    std::to_string(key.size()) + " vs " +
                    std::to_string(response.size()) + " mentions)");
  }
  Aligned a;
  a.key = Group(key, a.key_of);
  a.response = Group(response, a.response_of);
  a.mentions = key.size();
  return a;
}

double Ratio(double num, double den) { return den > 0.0 ? num / den : 0.0; }

const PRF kPerfect{1.0, 1.0, 1.0};

// Sum over chains of (|chain| - number of other-side parts it spans) and of
// (|chain| - 1).
std::pair<double, double> MucCounts(
    const std::vector<std::vector<size_t>> &chains,
    const std::vector<size_t> &other_of) {
  double num = 0.0, den = 0.0;
  for (const auto &chain : chains) {
    if (chain.size() < 2) continue;
    std::vector<size_t> parts;
    for (size_t m : chain) parts.push_back(other_of[m]);
    std::sort(parts.begin(), parts.end());
    const size_t distinct =
        std::unique(parts.begin(), parts.end()) - parts.begin();
    num += static_cast<double>(chain.size() - distinct);
    den += static_cast<double>(chain.size() - 1);
  }
  return {num, den};
}

// Mean over mentions of |own cluster n other cluster| / |own cluster|.
double BCubedSide(const std::vector<std::vector<size_t>> &own,
                  const std::vector<size_t> &other_of, size_t mentions) {
  double sum = 0.0;
  for (const auto &cluster : own) {
    std::unordered_map<size_t, size_t> overlap;
    for (size_t m : cluster) ++overlap[other_of[m]];
    // Every member with the same other-cluster shares the same overlap.
    for (const auto &[other, count] : overlap) {
      sum += static_cast<double>(count) * static_cast<double>(count) /
             static_cast<double>(cluster.size());
    }
  }
  return Ratio(sum, static_cast<double>(mentions));
}

}  // namespace

PRF Muc(const Partition &key, const Partition &response) {
  Aligned a = Align(key, response);
  if (a.mentions == 0) return kPerfect;
  auto [r_num, r_den] = MucCounts(a.key, a.response_of);
  auto [p_num, p_den] = MucCounts(a.response, a.key_of);
  return MakePRF(Ratio(p_num, p_den), Ratio(r_num, r_den));
}

PRF BCubed(const Partition &key, const Partition &response) {
  Aligned a = Align(key, response);
  if (a.mentions == 0) return kPerfect;
  const double recall = BCubedSide(a.key, a.response_of, a.mentions);
  const double precision =
      BCubedSide(a.response, a.key_of, a.mentions);
  return MakePRF(precision, recall);
}

PRF CeafE(const Partition &key, const Partition &response) {
  Aligned a = Align(key, response);
  if (a.mentions == 0) return kPerfect;
  const size_t nk = a.key.size();
  std::vector<std::unordered_map<size_t, size_t>> overlap(nk);
  for (size_t m = 0; m < a.mentions; ++m) {
    ++overlap[a.key_of[m]][a.response_of[m]];
  }
  auto phi = [&](size_t k, size_t r, size_t count) {
    return 2.0 * static_cast<double>(count) /
           static_cast<double>(a.key[k].size() + a.response[r].size());
  };

  // phi4 is zero between non-overlapping clusters, so the optimal alignment
  // decomposes over connected components of the overlap graph. Vertices
  // 0..nk-1 are key clusters, nk.. are response clusters.
  std::vector<size_t> parent(nk + a.response.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t k = 0; k < nk; ++k) {
    for (const auto &[r, count] : overlap[k]) {
      parent[find(k)] = find(nk + r);
    }
  }
  std::unordered_map<size_t, std::pair<std::vector<size_t>, std::vector<size_t>>>
      components;
  for (size_t k = 0; k < nk; ++k) components[find(k)].first.push_back(k);
  for (size_t r = 0; r < a.response.size(); ++r) {
    components[find(nk + r)].second.push_back(r);
  }

  // Sum component totals in order of their smallest key cluster.
  std::vector<std::pair<size_t, double>> totals;
  for (const auto &[root, members] : components) {
    const auto &[keys, responses] = members;
    if (keys.empty() || responses.empty()) continue;
    std::unordered_map<size_t, size_t> column;
    for (size_t c = 0; c < responses.size(); ++c) column[responses[c]] = c;
    std::vector<std::vector<double>> scores(
        keys.size(), std::vector<double>(responses.size(), 0.0));
    for (size_t row = 0; row < keys.size(); ++row) {
      for (const auto &[r, count] : overlap[keys[row]]) {
        scores[row][column.at(r)] = phi(keys[row], r, count);
      }
    }
    totals.emplace_back(keys.front(), OptimalAssignment(scores).total);
  }
  std::sort(totals.begin(), totals.end());
  double best = 0.0;
  for (const auto &[first, total] : totals) best += total;
  return MakePRF(Ratio(best, static_cast<double>(a.response.size())),
                 Ratio(best, static_cast<double>(nk)));
}

ScoreReport ScoreAll(const Partition &key, const Partition &response) {
  ScoreReport report;
  report.muc = Muc(key, response);
  report.b3 = BCubed(key, response);
  report.ceafe = CeafE(key, response);
  report.conll_f1 = (report.muc.f1 + report.b3.f1 + report.ceafe.f1) / 3.0;
  return report;
}

double RoundDecimals(double x, int places) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", places, x);
  return std::strtod(buf, nullptr);
}

std::string ScoreReportJson(const ScoreReport &report) {
  auto prf = [](const PRF &p) {
    nlohmann::ordered_json j;
    j["p"] = RoundDecimals(p.precision, 4);
    j["r"] = RoundDecimals(p.recall, 4);
    j["f1"] = RoundDecimals(p.f1, 4);
    return j;
  };
  nlohmann::ordered_json j;
  j["muc"] = prf(report.muc);
  j["b3"] = prf(report.b3);
  j["ceafe"] = prf(report.ceafe);
  j["conll_f1"] = RoundDecimals(report.conll_f1, 4);
  return j.dump();
}

}  // namespace swcoref
