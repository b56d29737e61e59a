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

#include "swcoref/noise.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "json.hpp"
#include "swcoref/errors.h"
#include "swcoref/lexical.h"
#include "swcoref/unicode.h"

namespace swcoref {

namespace {

uint64_t SplitMix64(uint64_t &state) {
  uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

uint64_t Rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed, uint64_t stream) {
  uint64_t state = seed ^ (stream * 0xD1B54A32D192ED03ull);
  for (uint64_t &word : s_) word = SplitMix64(state);
}

uint64_t Rng::Next() {
  const uint64_t result = Rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = Rotl(s_[3], 45);
  return result;
}

uint64_t Rng::Below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::Below: zero bound");
  // Reject the low residue so every value is equally likely.
  const uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const uint64_t r = Next();
    if (r >= threshold) return r % bound;
  }
}

std::string NoiseKindName(NoiseKind kind) {
  return kind == NoiseKind::kBoundary ? "boundary" : "substitution";
}

NoiseKind ParseNoiseKind(const std::string &name) {
  if (name == "boundary") return NoiseKind::kBoundary;
  if (name == "substitution") return NoiseKind::kSubstitution;
  throw std::invalid_argument("unknown noise kind: " + name);
}

std::vector<size_t> SelectTargets(size_t n, double rate, uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) {
    throw std::invalid_argument("noise rate must lie in [0, 1]");
  }
  const auto k = static_cast<size_t>(std::llround(rate * static_cast<double>(n)));
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), size_t{0});
  Rng rng(seed);
  for (size_t i = 0; i < k; ++i) {
    const size_t j = i + static_cast<size_t>(rng.Below(n - i));
    std::swap(order[i], order[j]);
  }
  order.resize(k);
  std::sort(order.begin(), order.end());
  return order;
}

std::optional<Mention> ApplyBoundaryEdit(const Mention &mention,
                                         const SentenceRecord &sentence,
                                         BoundaryEdit edit) {
  const std::u32string text = DecodeUtf8(sentence.text);
  const size_t n = text.size();
  size_t start = static_cast<size_t>(mention.start_char);
  size_t end = static_cast<size_t>(mention.end_char);
  if (start >= end || end > n) return std::nullopt;
  auto space = [&](size_t i) { return IsUnicodeSpace(text[i]); };

  switch (edit) {
    case BoundaryEdit::kExtendLeft: {
      size_t i = start;
      while (i > 0 && space(i - 1)) --i;
      if (i == 0) return std::nullopt;
      while (i > 0 && !space(i - 1)) --i;
      start = i;
      break;
    }
    case BoundaryEdit::kExtendRight: {
      size_t i = end;
      while (i < n && space(i)) ++i;
      if (i == n) return std::nullopt;
      while (i < n && !space(i)) ++i;
      end = i;
      break;
    }
    case BoundaryEdit::kTruncateLeft:
    case BoundaryEdit::kTruncateRight: {
      // Token boundaries inside the span.
      std::vector<std::pair<size_t, size_t>> tokens;
      for (size_t i = start; i < end;) {
        while (i < end && space(i)) ++i;
        if (i == end) break;
        size_t j = i;
        while (j < end && !space(j)) ++j;
        tokens.emplace_back(i, j);
        i = j;
      }
      if (tokens.size() < 2) return std::nullopt;
      if (edit == BoundaryEdit::kTruncateLeft) {
        start = tokens[1].first;
        end = tokens.back().second;
      } else {
        start = tokens.front().first;
        end = tokens[tokens.size() - 2].second;
      }
      break;
    }
  }
  Mention out = mention;
  out.start_char = static_cast<int64_t>(start);
  out.end_char = static_cast<int64_t>(end);
  out.text = EncodeUtf8(std::u32string_view(text).substr(start, end - start));
  return out;
}

BoundaryOutcome PerturbBoundary(const Mention &mention,
                                const SentenceRecord &sentence, Rng &rng) {
  static constexpr BoundaryEdit kEdits[] = {
      BoundaryEdit::kExtendLeft, BoundaryEdit::kExtendRight,
      BoundaryEdit::kTruncateLeft, BoundaryEdit::kTruncateRight};
  std::vector<std::pair<BoundaryEdit, Mention>> admissible;
  for (BoundaryEdit edit : kEdits) {
    if (auto edited = ApplyBoundaryEdit(mention, sentence, edit)) {
      admissible.emplace_back(edit, std::move(*edited));
    }
  }
  if (admissible.empty()) return {mention, std::nullopt};
  auto &chosen = admissible[rng.Below(admissible.size())];
  return {std::move(chosen.second), chosen.first};
}

FormInventory FormInventory::FromCorpus(const Corpus &corpus) {
  FormInventory inv;
  for (const Mention &m : corpus.mentions) {
    std::string form = NormalizeForm(m.text);
    if (form.empty()) continue;
    if (inv.surface.emplace(form, m.text).second) inv.forms.push_back(form);
  }
  std::sort(inv.forms.begin(), inv.forms.end());
  return inv;
}

SubstituteOutcome PerturbSubstitute(const Mention &mention,
                                    const SentenceRecord &sentence,
                                    const FormInventory &inventory,
                                    const std::set<std::string> &excluded,
                                    Rng &rng) {
  const std::string own = NormalizeForm(mention.text);
  std::vector<const std::string *> eligible;
  for (const std::string &form : inventory.forms) {
    if (form != own && !excluded.count(form)) eligible.push_back(&form);
  }
  if (eligible.empty()) return {mention, sentence.text, true};
  const std::string &form = *eligible[rng.Below(eligible.size())];
  const std::string &replacement = inventory.surface.at(form);

  const std::u32string text = DecodeUtf8(sentence.text);
  const std::u32string inserted = DecodeUtf8(replacement);
  const auto start = static_cast<size_t>(mention.start_char);
  const auto end = static_cast<size_t>(mention.end_char);
  std::u32string rewritten = text.substr(0, start) + inserted + text.substr(end);

  SubstituteOutcome out{mention, EncodeUtf8(rewritten), false};
  out.mention.text = replacement;
  out.mention.end_char = static_cast<int64_t>(start + inserted.size());
  return out;
}

namespace {

// Moves a mention's offsets after the sentence span [start, end) was
// replaced by `inserted` characters, and re-slices its text.
void ShiftAfterRewrite(Mention &m, const std::u32string &sentence,
                       int64_t start, int64_t end, int64_t inserted) {
  auto map = [&](int64_t p, bool is_end) {
    if (p <= start) return p;
    if (p >= end) return p + inserted - (end - start);
    return is_end ? start + inserted : start;
  };
  int64_t new_start = map(m.start_char, false);
  int64_t new_end = map(m.end_char, true);
  if (new_end <= new_start) new_end = new_start + 1;
  m.start_char = new_start;
  m.end_char = new_end;
  m.text = EncodeUtf8(std::u32string_view(sentence).substr(
      new_start, new_end - new_start));
}

}  // namespace

NoiseResult ApplyNoise(const Corpus &corpus, const NoiseConfig &config) {
  if (config.kind == NoiseKind::kSubstitution && !corpus.HasGold()) {
    throw DataError("substitution noise requires gold labels");
  }
  NoiseResult result{corpus, {}, {}};
  Corpus &noisy = result.corpus;
  const std::vector<size_t> targets =
      SelectTargets(corpus.mentions.size(), config.rate, config.seed);
  if (targets.empty()) return result;

  std::unordered_map<std::string, size_t> sentence_of_key;
  for (size_t i = 0; i < corpus.sentences.size(); ++i) {
    const SentenceRecord &s = corpus.sentences[i];
    sentence_of_key.emplace(s.doc_id + '\0' + s.sent_id, i);
  }
  std::vector<size_t> sentence_of(corpus.mentions.size());
  std::unordered_map<size_t, std::vector<size_t>> mentions_in;
  for (size_t i = 0; i < corpus.mentions.size(); ++i) {
    const Mention &m = corpus.mentions[i];
    auto it = sentence_of_key.find(m.doc_id + '\0' + m.sent_id);
    if (it == sentence_of_key.end()) {
      throw DataError("mention " + m.mention_id + " has no sentence");
    }
    sentence_of[i] = it->second;
    mentions_in[it->second].push_back(i);
  }

  // Inventory and cluster exclusions come from the clean corpus.
  FormInventory inventory;
  std::map<std::string, std::set<std::string>> cluster_forms;
  if (config.kind == NoiseKind::kSubstitution) {
    inventory = FormInventory::FromCorpus(corpus);
    for (const Mention &m : corpus.mentions) {
      cluster_forms[*m.gold_cluster].insert(NormalizeForm(m.text));
    }
  }

  Rng rng(config.seed, 1);
  for (size_t index : targets) {
    Mention &mention = noisy.mentions[index];
    SentenceRecord &sentence = noisy.sentences[sentence_of[index]];
    result.targets.push_back(mention.mention_id);
    if (config.kind == NoiseKind::kBoundary) {
      BoundaryOutcome out = PerturbBoundary(mention, sentence, rng);
      if (!out.edit) result.skipped.push_back(mention.mention_id);
      mention = std::move(out.mention);
      continue;
    }
    const std::string original = NormalizeForm(corpus.mentions[index].text);
    std::set<std::string> excluded = cluster_forms[*mention.gold_cluster];
    excluded.insert(original);
    SubstituteOutcome out =
        PerturbSubstitute(mention, sentence, inventory, excluded, rng);
    if (out.skipped) {
      result.skipped.push_back(mention.mention_id);
      continue;
    }
    const int64_t start = mention.start_char;
    const int64_t end = mention.end_char;
    const int64_t inserted = out.mention.end_char - out.mention.start_char;
    sentence.text = std::move(out.sentence_text);
    mention = std::move(out.mention);
    const std::u32string decoded = DecodeUtf8(sentence.text);
    for (size_t other : mentions_in[sentence_of[index]]) {
      if (other == index) continue;
      ShiftAfterRewrite(noisy.mentions[other], decoded, start, end, inserted);
    }
  }
  return result;
}

std::string NoiseManifestJson(const NoiseConfig &config,
                              const NoiseResult &result) {
  nlohmann::ordered_json j;
  j["kind"] = NoiseKindName(config.kind);
  j["rate"] = config.rate;
  j["seed"] = config.seed;
  j["targets"] = result.targets;
  j["skipped"] = result.skipped;
  return j.dump(2);
}

}  // namespace swcoref
