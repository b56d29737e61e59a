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

#include "swcoref/corpus.h"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "swcoref/errors.h"
#include "swcoref/unicode.h"

namespace swcoref {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

bool Corpus::HasGold() const {
  for (const Mention &m : mentions) {
    if (!m.gold_cluster) return false;
  }
  return true;
}

int64_t Corpus::FindSentence(const std::string &doc_id,
                             const std::string &sent_id) const {
  for (size_t i = 0; i < sentences.size(); ++i) {
    if (sentences[i].doc_id == doc_id && sentences[i].sent_id == sent_id) {
      return static_cast<int64_t>(i);
    }
  }
  return -1;
}

std::vector<std::string> Corpus::DocumentIds() const {
  std::vector<std::string> ids;
  std::unordered_set<std::string> seen;
  for (const SentenceRecord &s : sentences) {
    if (seen.insert(s.doc_id).second) ids.push_back(s.doc_id);
  }
  for (const Mention &m : mentions) {
    if (seen.insert(m.doc_id).second) ids.push_back(m.doc_id);
  }
  return ids;
}

ValidationReport ValidateCorpus(const Corpus &corpus) {
  ValidationReport report;
  // Sentence keys are joined with a NUL so ids containing '/' cannot collide.
  auto key = [](const std::string &doc, const std::string &sent) {
    return doc + '\0' + sent;
  };
  std::unordered_map<std::string, size_t> sentence_index;
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    const SentenceRecord &s = corpus.sentences[i];
    if (!sentence_index.emplace(key(s.doc_id, s.sent_id), i).second) {
      report.push_back({s.doc_id + "/" + s.sent_id, "duplicate sentence key"});
    }
  }

  std::unordered_set<std::string> ids;
  size_t with_gold = 0;
  std::unordered_map<size_t, std::u32string> decoded;
  for (const Mention &m : corpus.mentions) {
    if (m.gold_cluster) ++with_gold;
    if (!ids.insert(m.mention_id).second) {
      report.push_back({m.mention_id, "duplicate mention_id"});
    }
    auto it = sentence_index.find(key(m.doc_id, m.sent_id));
    if (it == sentence_index.end()) {
      report.push_back({m.mention_id, "sentence " + m.doc_id + "/" +
                                          m.sent_id + " not found"});
      continue;
    }
    auto [pos, inserted] = decoded.try_emplace(it->second);
    if (inserted) pos->second = DecodeUtf8(corpus.sentences[it->second].text);
    const std::u32string &sentence = pos->second;
    if (m.start_char < 0 || m.start_char >= m.end_char ||
        m.end_char > static_cast<int64_t>(sentence.size())) {
      report.push_back({m.mention_id, "offsets [" +
                                          std::to_string(m.start_char) + "," +
                                          std::to_string(m.end_char) +
                                          ") outside sentence of length " +
                                          std::to_string(sentence.size())});
      continue;
    }
    std::string slice = EncodeUtf8(std::u32string_view(sentence).substr(
        m.start_char, m.end_char - m.start_char));
    if (slice != m.text) {
      report.push_back({m.mention_id, "span mismatch: sentence slice \"" +
                                          slice + "\" != mention text \"" +
                                          m.text + "\""});
    }
  }
  if (with_gold != 0 && with_gold != corpus.mentions.size()) {
    report.push_back({"<corpus>", "mixed gold labeling: " +
                                      std::to_string(with_gold) + " of " +
                                      std::to_string(corpus.mentions.size()) +
                                      " mentions carry gold_cluster"});
  }
  return report;
}

std::map<std::string, std::vector<std::string>> Partition::Clusters() const {
  std::map<std::string, std::vector<std::string>> clusters;
  // assignment is ordered by id, so member lists come out sorted.
  for (const auto &[id, label] : assignment) clusters[label].push_back(id);
  return clusters;
}

namespace {

// Maps each label of `p` to the canonical representative: its smallest id.
std::map<std::string, std::string> CanonicalRepresentatives(
    const Partition &p) {
  std::unordered_map<std::string, std::string> first;
  std::map<std::string, std::string> rep;
  for (const auto &[id, label] : p.assignment) {
    auto [it, inserted] = first.try_emplace(label, id);
    rep[id] = it->second;
  }
  return rep;
}

}  // namespace

bool Partition::SameSetPartition(const Partition &other) const {
  if (assignment.size() != other.assignment.size()) return false;
  return CanonicalRepresentatives(*this) == CanonicalRepresentatives(other);
}

bool Partition::Coarsens(const Partition &finer) const {
  if (assignment.size() != finer.assignment.size()) return false;
  std::unordered_map<std::string, std::string> coarse_of_fine;
  for (const auto &[id, fine_label] : finer.assignment) {
    auto it = assignment.find(id);
    if (it == assignment.end()) return false;
    auto [pos, inserted] = coarse_of_fine.try_emplace(fine_label, it->second);
    if (!inserted && pos->second != it->second) return false;
  }
  return true;
}

Partition PartitionFromLabels(const std::vector<Mention> &mentions,
                              const std::vector<size_t> &labels) {
  if (mentions.size() != labels.size()) {
    throw std::invalid_argument("PartitionFromLabels: size mismatch");
  }
  Partition p;
  std::unordered_map<size_t, size_t> numbering;
  for (size_t i = 0; i < mentions.size(); ++i) {
    auto [it, inserted] = numbering.try_emplace(labels[i], numbering.size());
    p.assignment[mentions[i].mention_id] = "c" + std::to_string(it->second);
  }
  return p;
}

Partition GoldPartition(const Corpus &corpus) {
  Partition p;
  for (const Mention &m : corpus.mentions) {
    if (!m.gold_cluster) {
      throw DataError("mention " + m.mention_id + " has no gold_cluster");
    }
    p.assignment[m.mention_id] = *m.gold_cluster;
  }
  return p;
}

PartitionStats ComputePartitionStats(const Partition &partition) {
  std::unordered_map<std::string, size_t> sizes;
  for (const auto &[id, label] : partition.assignment) ++sizes[label];
  PartitionStats stats;
  stats.cluster_count = sizes.size();
  for (const auto &[label, n] : sizes) ++stats.size_histogram[n];
  return stats;
}

namespace {

template <typename T>
T Field(const json &record, const char *name, size_t line) {
  auto it = record.find(name);
  if (it == record.end()) {
    throw DataError("line " + std::to_string(line) + ": missing field \"" +
                    name + "\"");
  }
  try {
    return it->get<T>();
  } catch (const json::exception &) {
    throw DataError("line " + std::to_string(line) + ": field \"" + name +
                    "\" has the wrong type");
  }
}

std::ifstream OpenInput(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  return in;
}

}  // namespace

Corpus ReadCorpus(std::istream &in) {
  Corpus corpus;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw DataError("line " + std::to_string(line_no) + ": " + e.what());
    }
    auto kind = Field<std::string>(record, "kind", line_no);
    if (kind == "sentence") {
      SentenceRecord s;
      s.doc_id = Field<std::string>(record, "doc_id", line_no);
      s.sent_id = Field<std::string>(record, "sent_id", line_no);
      s.text = Field<std::string>(record, "text", line_no);
      DecodeUtf8(s.text);
      corpus.sentences.push_back(std::move(s));
    } else if (kind == "mention") {
      Mention m;
      m.mention_id = Field<std::string>(record, "mention_id", line_no);
      m.doc_id = Field<std::string>(record, "doc_id", line_no);
      m.sent_id = Field<std::string>(record, "sent_id", line_no);
      m.text = Field<std::string>(record, "text", line_no);
      m.start_char = Field<int64_t>(record, "start_char", line_no);
      m.end_char = Field<int64_t>(record, "end_char", line_no);
      if (auto it = record.find("gold_cluster");
          it != record.end() && !it->is_null()) {
        m.gold_cluster = Field<std::string>(record, "gold_cluster", line_no);
      }
      DecodeUtf8(m.text);
      corpus.mentions.push_back(std::move(m));
    } else {
      throw DataError("line " + std::to_string(line_no) +
                      ": unknown record kind \"" + kind + "\"");
    }
  }
  return corpus;
}

Corpus ReadCorpusFile(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return ReadCorpus(in);
}

void WriteCorpus(const Corpus &corpus, std::ostream &out) {
  for (const SentenceRecord &s : corpus.sentences) {
    ordered_json record;
    record["kind"] = "sentence";
    record["doc_id"] = s.doc_id;
    record["sent_id"] = s.sent_id;
    record["text"] = s.text;
    out << record.dump() << '\n';
  }
  for (const Mention &m : corpus.mentions) {
    ordered_json record;
    record["kind"] = "mention";
    record["mention_id"] = m.mention_id;
    record["doc_id"] = m.doc_id;
    record["sent_id"] = m.sent_id;
    record["text"] = m.text;
    record["start_char"] = m.start_char;
    record["end_char"] = m.end_char;
    if (m.gold_cluster) record["gold_cluster"] = *m.gold_cluster;
    out << record.dump() << '\n';
  }
}

Partition ReadPartition(std::istream &in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error &e) {
    throw DataError(std::string("partition: ") + e.what());
  }
  auto clusters = doc.find("clusters");
  if (clusters == doc.end() || !clusters->is_object()) {
    throw DataError("partition: missing \"clusters\" object");
  }
  Partition p;
  for (const auto &[label, members] : clusters->items()) {
    if (!members.is_array()) {
      throw DataError("partition: cluster " + label + " is not an array");
    }
    for (const json &id : members) {
      if (!id.is_string()) {
        throw DataError("partition: non-string id in cluster " + label);
      }
      if (!p.assignment.emplace(id.get<std::string>(), label).second) {
        throw DataError("partition: mention " + id.get<std::string>() +
                        " appears more than once");
      }
    }
  }
  return p;
}

Partition ReadPartitionFile(const std::string &path) {
  std::ifstream in = OpenInput(path);
  return ReadPartition(in);
}

void WritePartition(const Partition &partition, std::ostream &out) {
  json clusters = json::object();
  for (const auto &[label, members] : partition.Clusters()) {
    clusters[label] = members;
  }
  json doc;
  doc["clusters"] = std::move(clusters);
  out << doc.dump(2) << '\n';
}

}  // namespace swcoref
