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

#ifndef SWCOREF_CORPUS_H_
#define SWCOREF_CORPUS_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace swcoref {

// One annotated software mention. Offsets count Unicode scalar values of the
// owning sentence text; `end_char` is exclusive.
struct Mention {
  std::string mention_id;
  std::string doc_id;
  std::string sent_id;
  std::string text;
  int64_t start_char = 0;
  int64_t end_char = 0;
  std::optional<std::string> gold_cluster;

  bool operator==(const Mention &) const = default;
};

struct SentenceRecord {
  std::string doc_id;
  std::string sent_id;
  std::string text;

  bool operator==(const SentenceRecord &) const = default;
};

struct Corpus {
  std::vector<SentenceRecord> sentences;
  std::vector<Mention> mentions;

  bool operator==(const Corpus &) const = default;

  // True when every mention carries a gold label (vacuously for no mentions).
  bool HasGold() const;

  // Index into `sentences` for (doc_id, sent_id), or -1.
  int64_t FindSentence(const std::string &doc_id,
                       const std::string &sent_id) const;

  // Distinct document ids in first-seen order over sentences then mentions.
  std::vector<std::string> DocumentIds() const;
};

struct Violation {
  std::string subject;  // mention_id or "doc_id/sent_id"
  std::string reason;
};

using ValidationReport = std::vector<Violation>;

ValidationReport ValidateCorpus(const Corpus &corpus);

// A total assignment of mention ids to opaque cluster labels.
struct Partition {
  std::map<std::string, std::string> assignment;

  bool operator==(const Partition &) const = default;

  size_t size() const { return assignment.size(); }

  // label -> sorted member ids.
  std::map<std::string, std::vector<std::string>> Clusters() const;

  // True when both partitions induce the same set partition, whatever the
  // labels are.
  bool SameSetPartition(const Partition &other) const;

  // True when every cluster of `finer` lies inside one cluster of this.
  bool Coarsens(const Partition &finer) const;
};

// Builds a partition from per-mention integer cluster ids in corpus order.
// Labels are "c<k>" with k numbering clusters by first occurrence.
Partition PartitionFromLabels(const std::vector<Mention> &mentions,
                              const std::vector<size_t> &labels);

// Throws DataError if any mention lacks gold_cluster.
Partition GoldPartition(const Corpus &corpus);

struct PartitionStats {
  size_t cluster_count = 0;
  std::map<size_t, size_t> size_histogram;  // cluster size -> count
};

PartitionStats ComputePartitionStats(const Partition &partition);

// JSONL corpus files. Readers throw DataError with a line number on bad
// records; they do not validate cross-record invariants.
Corpus ReadCorpus(std::istream &in);
Corpus ReadCorpusFile(const std::string &path);
void WriteCorpus(const Corpus &corpus, std::ostream &out);

// Partition JSON: {"clusters": {"<label>": [sorted ids], ...}}.
Partition ReadPartition(std::istream &in);
Partition ReadPartitionFile(const std::string &path);
void WritePartition(const Partition &partition, std::ostream &out);

}  // namespace swcoref

#endif  // SWCOREF_CORPUS_H_
