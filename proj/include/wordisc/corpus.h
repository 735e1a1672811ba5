// include/wordisc/corpus.h

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

#ifndef WORDISC_CORPUS_H_
#define WORDISC_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wordisc {

using PhonemeSeq = std::vector<std::string>;
using TokenList = std::vector<std::string>;

// Internal boundary positions, sorted and unique. Position i (1-based) is the
// gap between phoneme i and phoneme i+1, so valid positions are 1..L-1.
using BoundarySet = std::vector<int>;

// Word separator token inside a segmented phoneme transcript.
inline constexpr std::string_view kWordSeparator = "|";

struct Utterance {
  std::string id;
  PhonemeSeq phonemes;
  std::map<std::string, TokenList> translations;
  std::optional<BoundarySet> gold_boundaries;

  bool operator==(const Utterance &) const = default;
};

/// An ordered collection of utterances sharing a set of translation
/// languages. The constructor checks every invariant (distinct ids, valid
/// phonemes and gold boundaries, one non-empty translation per declared
/// language) and the object is immutable afterwards.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<std::string> languages, std::vector<Utterance> utterances);

  const std::vector<std::string> &languages() const { return languages_; }
  const std::vector<Utterance> &utterances() const { return utterances_; }
  std::size_t size() const { return utterances_.size(); }
  bool empty() const { return utterances_.empty(); }
  const Utterance &operator[](std::size_t i) const { return utterances_[i]; }

  bool HasLanguage(std::string_view lang) const;
  // Returns nullptr when the id is unknown.
  const Utterance *Find(std::string_view id) const;

  bool operator==(const Corpus &other) const {
    return languages_ == other.languages_ && utterances_ == other.utterances_;
  }

 private:
  std::vector<std::string> languages_;
  std::vector<Utterance> utterances_;
  std::unordered_map<std::string, std::size_t> index_;
};

enum class CorpusFormat { kTsv, kJsonl };

// Resolves "tsv"/"jsonl"; throws DataError otherwise.
CorpusFormat ParseCorpusFormat(std::string_view name);
// Picks the format from the file extension (.jsonl/.json → jsonl, else tsv).
CorpusFormat GuessCorpusFormat(std::string_view path);

struct TokenizePolicy {
  bool lowercase = true;
};

// Lowercases (Latin ranges) when asked, splits on Unicode whitespace and strips
// the punctuation set . , ; : ! ? " ( ) [ ] « » from both ends of every token.
// Apostrophes and hyphens inside a token are kept.
TokenList TokenizeTranslation(std::string_view text,
                              const TokenizePolicy &policy = {});

// "a b | c" -> ({a, b, c}, {2}). Throws DataError on an empty transcript or a
// misplaced separator.
std::pair<PhonemeSeq, BoundarySet> GoldBoundariesFromSegmented(
    std::string_view segmented);

// Inverse of GoldBoundariesFromSegmented.
std::string FormatSegmented(const PhonemeSeq &phonemes,
                            const BoundarySet &boundaries);

Corpus LoadCorpus(const std::string &path, CorpusFormat format,
                  const TokenizePolicy &policy = {});
Corpus ReadCorpus(std::istream &in, CorpusFormat format,
                  const TokenizePolicy &policy = {});
void WriteCorpus(const Corpus &corpus, std::ostream &out, CorpusFormat format);
void SaveCorpus(const Corpus &corpus, const std::string &path,
                CorpusFormat format);

struct StatsRecord {
  std::string language;
  std::size_t sentence_count = 0;
  std::size_t token_count = 0;
  std::size_t type_count = 0;
  double avg_token_length = 0.0;         // code points per token
  double avg_tokens_per_sentence = 0.0;
};

StatsRecord CorpusStats(const Corpus &corpus, std::string_view language);

void WriteStatsHeader(std::ostream &out);
void WriteStatsRow(const StatsRecord &stats, std::ostream &out);

// Distinct gold word types (as phoneme sequences) over every utterance that
// carries a gold segmentation.
std::vector<PhonemeSeq> GoldTypes(const Corpus &corpus);

}  // namespace wordisc

#endif  // WORDISC_CORPUS_H_
