// src/corpus.cc

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

#include "wordisc/corpus.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wordisc/error.h"
#include "wordisc/text-util.h"

namespace wordisc {

namespace {

const char *const kTranslationPrefix = "trans_";

bool IsStrippedPunct(char32_t cp) {
  switch (cp) {
    case U'.': case U',': case U';': case U':': case U'!': case U'?':
    case U'"': case U'(': case U')': case U'[': case U']':
    case U'«': case U'»':
      return true;
    default:
      return false;
  }
}

char32_t ToLower(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  if ((cp >= 0x100 && cp <= 0x12F) || (cp >= 0x132 && cp <= 0x137) ||
      (cp >= 0x14A && cp <= 0x177))
    return (cp % 2 == 0) ? cp + 1 : cp;
  if ((cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E))
    return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  return cp;
}

std::string LineError(std::size_t line_no, const std::string &field,
                      const std::string &what) {
  return "line " + std::to_string(line_no) + ": field '" + field + "': " +
         what;
}

void CheckPhonemeSymbol(const std::string &sym, std::size_t line_no) {
  if (sym.empty())
    throw DataError(LineError(line_no, "phonemes", "empty phoneme symbol"));
  if (sym == kWordSeparator)
    throw DataError(
        LineError(line_no, "phonemes", "'|' is reserved for gold boundaries"));
  for (char32_t cp : DecodeUtf8(sym)) {
    if (IsUnicodeSpace(cp))
      throw DataError(
          LineError(line_no, "phonemes", "whitespace inside phoneme symbol"));
  }
}

void CheckBoundaries(const BoundarySet &b, std::size_t length,
                     const std::string &where) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] < 1 || static_cast<std::size_t>(b[i]) >= length)
      throw DataError(where + ": gold boundary " + std::to_string(b[i]) +
                      " outside 1.." + std::to_string(length - 1));
    if (i > 0 && b[i] <= b[i - 1])
      throw DataError(where + ": gold boundaries not strictly increasing");
  }
}

void ValidateUtterance(const Utterance &u,
                       const std::vector<std::string> &languages) {
  const std::string where = "utterance '" + u.id + "'";
  if (u.id.empty()) throw DataError("utterance with empty id");
  for (char32_t cp : DecodeUtf8(u.id)) {
    if (IsUnicodeSpace(cp))
      throw DataError(where + ": id contains whitespace");
  }
  if (u.phonemes.empty()) throw DataError(where + ": empty phoneme sequence");
  for (const auto &p : u.phonemes) {
    if (p.empty() || p == kWordSeparator)
      throw DataError(where + ": invalid phoneme symbol '" + p + "'");
    for (char32_t cp : DecodeUtf8(p))
      if (IsUnicodeSpace(cp))
        throw DataError(where + ": whitespace inside phoneme symbol");
  }
  if (u.gold_boundaries) CheckBoundaries(*u.gold_boundaries, u.phonemes.size(), where);
  for (const auto &lang : languages) {
    auto it = u.translations.find(lang);
    if (it == u.translations.end())
      throw DataError(where + ": missing declared language '" + lang + "'");
    if (it->second.empty())
      throw DataError(where + ": empty translation for language '" + lang +
                      "'");
  }
  if (u.translations.size() != languages.size())
    throw DataError(where + ": translation for an undeclared language");
}

Corpus ReadTsv(std::istream &in, const TokenizePolicy &policy) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> languages;
  bool have_header = false;
  std::vector<Utterance> utterances;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = SplitOn(line, '\t');
    if (!have_header) {
      if (fields.size() < 3 || fields[0] != "id" || fields[1] != "phonemes" ||
          fields[2] != "gold")
        throw DataError("line " + std::to_string(line_no) +
                        ": header must start with id, phonemes, gold");
      for (std::size_t i = 3; i < fields.size(); ++i) {
        const std::string &col = fields[i];
        if (col.rfind(kTranslationPrefix, 0) != 0 ||
            col.size() == std::char_traits<char>::length(kTranslationPrefix))
          throw DataError("line " + std::to_string(line_no) +
                          ": bad translation column '" + col + "'");
        std::string lang = col.substr(6);
        if (std::find(languages.begin(), languages.end(), lang) !=
            languages.end())
          throw DataError("line " + std::to_string(line_no) +
                          ": duplicate language column '" + col + "'");
        languages.push_back(lang);
      }
      have_header = true;
      continue;
    }
    if (fields.size() < 3 + languages.size())
      throw DataError(LineError(
          line_no,
          fields.size() < 3 ? "phonemes"
                            : kTranslationPrefix + languages[fields.size() - 3],
          "missing field (expected " + std::to_string(3 + languages.size()) +
              " columns, got " + std::to_string(fields.size()) + ")"));
    if (fields.size() > 3 + languages.size())
      throw DataError("line " + std::to_string(line_no) + ": expected " +
                      std::to_string(3 + languages.size()) +
                      " columns, got " + std::to_string(fields.size()));
    Utterance u;
    u.id = fields[0];
    if (u.id.empty()) throw DataError(LineError(line_no, "id", "empty id"));
    if (!seen_ids.insert(u.id).second)
      throw DataError("duplicate utterance id '" + u.id + "' at line " +
                      std::to_string(line_no));
    u.phonemes = SplitAsciiWhitespace(fields[1]);
    if (u.phonemes.empty())
      throw DataError(LineError(line_no, "phonemes", "empty transcript"));
    for (const auto &p : u.phonemes) CheckPhonemeSymbol(p, line_no);
    if (!SplitAsciiWhitespace(fields[2]).empty()) {
      std::pair<PhonemeSeq, BoundarySet> gold;
      try {
        gold = GoldBoundariesFromSegmented(fields[2]);
      } catch (const DataError &e) {
        throw DataError(LineError(line_no, "gold", e.what()));
      }
      if (gold.first != u.phonemes)
        throw DataError(LineError(line_no, "gold",
                                  "phonemes differ from the phonemes field"));
      u.gold_boundaries = std::move(gold.second);
    }
    for (std::size_t k = 0; k < languages.size(); ++k) {
      TokenList tokens = TokenizeTranslation(fields[3 + k], policy);
      if (tokens.empty())
        throw DataError(LineError(line_no, kTranslationPrefix + languages[k],
                                  "empty translation"));
      u.translations.emplace(languages[k], std::move(tokens));
    }
    utterances.push_back(std::move(u));
  }
  if (!have_header) throw DataError("corpus file has no header row");
  return Corpus(std::move(languages), std::move(utterances));
}

Corpus ReadJsonl(std::istream &in, const TokenizePolicy &policy) {
  using nlohmann::ordered_json;
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> languages;
  bool have_languages = false;
  std::vector<Utterance> utterances;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (SplitAsciiWhitespace(line).empty()) continue;
    ordered_json obj;
    try {
      obj = ordered_json::parse(line);
    } catch (const std::exception &e) {
      throw DataError("line " + std::to_string(line_no) + ": invalid JSON: " +
                      e.what());
    }
    if (!obj.is_object())
      throw DataError("line " + std::to_string(line_no) + ": not an object");
    Utterance u;
    if (!obj.contains("id") || !obj["id"].is_string())
      throw DataError(LineError(line_no, "id", "missing or not a string"));
    u.id = obj["id"].get<std::string>();
    if (u.id.empty()) throw DataError(LineError(line_no, "id", "empty id"));
    if (!seen_ids.insert(u.id).second)
      throw DataError("duplicate utterance id '" + u.id + "' at line " +
                      std::to_string(line_no));
    if (!obj.contains("phonemes") || !obj["phonemes"].is_array())
      throw DataError(LineError(line_no, "phonemes", "missing or not an array"));
    for (const auto &p : obj["phonemes"]) {
      if (!p.is_string())
        throw DataError(LineError(line_no, "phonemes", "non-string phoneme"));
      u.phonemes.push_back(p.get<std::string>());
      CheckPhonemeSymbol(u.phonemes.back(), line_no);
    }
    if (u.phonemes.empty())
      throw DataError(LineError(line_no, "phonemes", "empty transcript"));
    if (obj.contains("gold_boundaries") && !obj["gold_boundaries"].is_null()) {
      const auto &g = obj["gold_boundaries"];
      if (!g.is_array())
        throw DataError(LineError(line_no, "gold_boundaries", "not an array"));
      BoundarySet b;
      for (const auto &x : g) {
        if (!x.is_number_integer())
          throw DataError(
              LineError(line_no, "gold_boundaries", "non-integer boundary"));
        b.push_back(x.get<int>());
      }
      try {
        CheckBoundaries(b, u.phonemes.size(), "gold");
      } catch (const DataError &e) {
        throw DataError(LineError(line_no, "gold_boundaries", e.what()));
      }
      u.gold_boundaries = std::move(b);
    }
    if (!obj.contains("translations") || !obj["translations"].is_object())
      throw DataError(
          LineError(line_no, "translations", "missing or not an object"));
    const auto &tr = obj["translations"];
    if (!have_languages) {
      for (const auto &item : tr.items()) languages.push_back(item.key());
      have_languages = true;
    }
    for (const auto &lang : languages) {
      if (!tr.contains(lang))
        throw DataError(LineError(line_no, "translations",
                                  "missing declared language '" + lang + "'"));
      if (!tr[lang].is_string())
        throw DataError(
            LineError(line_no, "translations." + lang, "not a string"));
      TokenList tokens = TokenizeTranslation(tr[lang].get<std::string>(), policy);
      if (tokens.empty())
        throw DataError(
            LineError(line_no, "translations." + lang, "empty translation"));
      u.translations.emplace(lang, std::move(tokens));
    }
    if (tr.size() != languages.size())
      throw DataError(LineError(line_no, "translations",
                                "undeclared language present"));
    utterances.push_back(std::move(u));
  }
  return Corpus(std::move(languages), std::move(utterances));
}

}  // namespace

Corpus::Corpus(std::vector<std::string> languages,
               std::vector<Utterance> utterances)
    : languages_(std::move(languages)), utterances_(std::move(utterances)) {
  std::set<std::string> langs;
  for (const auto &l : languages_) {
    if (l.empty()) throw DataError("empty language code");
    if (!langs.insert(l).second)
      throw DataError("duplicate language '" + l + "'");
  }
  for (std::size_t i = 0; i < utterances_.size(); ++i) {
    ValidateUtterance(utterances_[i], languages_);
    if (!index_.emplace(utterances_[i].id, i).second)
      throw DataError("duplicate utterance id '" + utterances_[i].id + "'");
  }
}

bool Corpus::HasLanguage(std::string_view lang) const {
  return std::find(languages_.begin(), languages_.end(), lang) !=
         languages_.end();
}

const Utterance *Corpus::Find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  return it == index_.end() ? nullptr : &utterances_[it->second];
}

CorpusFormat ParseCorpusFormat(std::string_view name) {
  if (name == "tsv") return CorpusFormat::kTsv;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  throw DataError("unknown corpus format '" + std::string(name) + "'");
}

CorpusFormat GuessCorpusFormat(std::string_view path) {
  auto ends_with = [&](std::string_view suffix) {
    return path.size() >= suffix.size() &&
           path.substr(path.size() - suffix.size()) == suffix;
  };
  return ends_with(".jsonl") || ends_with(".json") ? CorpusFormat::kJsonl
                                                   : CorpusFormat::kTsv;
}

TokenList TokenizeTranslation(std::string_view text,
                              const TokenizePolicy &policy) {
  TokenList tokens;
  std::vector<char32_t> cps = DecodeUtf8(text);
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && IsUnicodeSpace(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !IsUnicodeSpace(cps[j])) ++j;
    std::size_t b = i, e = j;
    while (b < e && IsStrippedPunct(cps[b])) ++b;
    while (e > b && IsStrippedPunct(cps[e - 1])) --e;
    if (e > b) {
      std::string tok;
      for (std::size_t k = b; k < e; ++k)
        AppendUtf8(policy.lowercase ? ToLower(cps[k]) : cps[k], &tok);
      tokens.push_back(std::move(tok));
    }
    i = j;
  }
  return tokens;
}

std::pair<PhonemeSeq, BoundarySet> GoldBoundariesFromSegmented(
    std::string_view segmented) {
  std::vector<std::string> symbols = SplitAsciiWhitespace(segmented);
  if (symbols.empty()) throw DataError("empty segmented transcript");
  PhonemeSeq phonemes;
  BoundarySet boundaries;
  bool word_open = false;
  for (const auto &s : symbols) {
    if (s == kWordSeparator) {
      if (!word_open) throw DataError("empty word in segmented transcript");
      boundaries.push_back(static_cast<int>(phonemes.size()));
      word_open = false;
    } else {
      phonemes.push_back(s);
      word_open = true;
    }
  }
  if (!word_open) throw DataError("segmented transcript ends with '|'");
  return {std::move(phonemes), std::move(boundaries)};
}

std::string FormatSegmented(const PhonemeSeq &phonemes,
                            const BoundarySet &boundaries) {
  std::string out;
  std::size_t next = 0;
  for (std::size_t i = 0; i < phonemes.size(); ++i) {
    if (i) {
      out += ' ';
      if (next < boundaries.size() &&
          static_cast<std::size_t>(boundaries[next]) == i) {
        out += "| ";
        ++next;
      }
    }
    out += phonemes[i];
  }
  return out;
}

Corpus ReadCorpus(std::istream &in, CorpusFormat format,
                  const TokenizePolicy &policy) {
  return format == CorpusFormat::kTsv ? ReadTsv(in, policy)
                                      : ReadJsonl(in, policy);
}

Corpus LoadCorpus(const std::string &path, CorpusFormat format,
                  const TokenizePolicy &policy) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open corpus file '" + path + "'");
  try {
    return ReadCorpus(in, format, policy);
  } catch (const DataError &e) {
    throw DataError(path + ": " + e.what());
  }
}

void WriteCorpus(const Corpus &corpus, std::ostream &out, CorpusFormat format) {
  if (format == CorpusFormat::kTsv) {
    out << "id\tphonemes\tgold";
    for (const auto &l : corpus.languages()) out << '\t' << kTranslationPrefix << l;
    out << '\n';
    for (const auto &u : corpus.utterances()) {
      out << u.id << '\t' << Join(u.phonemes, " ") << '\t';
      if (u.gold_boundaries) out << FormatSegmented(u.phonemes, *u.gold_boundaries);
      for (const auto &l : corpus.languages())
        out << '\t' << Join(u.translations.at(l), " ");
      out << '\n';
    }
    return;
  }
  for (const auto &u : corpus.utterances()) {
    nlohmann::ordered_json obj;
    obj["id"] = u.id;
    obj["phonemes"] = u.phonemes;
    if (u.gold_boundaries) obj["gold_boundaries"] = *u.gold_boundaries;
    nlohmann::ordered_json tr = nlohmann::ordered_json::object();
    for (const auto &l : corpus.languages()) tr[l] = Join(u.translations.at(l), " ");
    obj["translations"] = std::move(tr);
    out << obj.dump() << '\n';
  }
}

void SaveCorpus(const Corpus &corpus, const std::string &path,
                CorpusFormat format) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write corpus file '" + path + "'");
  WriteCorpus(corpus, out, format);
}

StatsRecord CorpusStats(const Corpus &corpus, std::string_view language) {
  if (!corpus.HasLanguage(language))
    throw DataError("unknown language '" + std::string(language) + "'");
  StatsRecord rec;
  rec.language = std::string(language);
  rec.sentence_count = corpus.size();
  std::set<std::string> types;
  std::size_t chars = 0;
  const std::string lang(language);
  for (const auto &u : corpus.utterances()) {
    for (const auto &tok : u.translations.at(lang)) {
      ++rec.token_count;
      chars += Utf8Length(tok);
      types.insert(tok);
    }
  }
  if (rec.token_count == 0)
    throw DataError("no tokens for language '" + lang + "'");
  rec.type_count = types.size();
  rec.avg_token_length =
      static_cast<double>(chars) / static_cast<double>(rec.token_count);
  rec.avg_tokens_per_sentence = static_cast<double>(rec.token_count) /
                                static_cast<double>(rec.sentence_count);
  return rec;
}

void WriteStatsHeader(std::ostream &out) {
  out << "language\tsentence_count\ttoken_count\ttype_count\tavg_token_length"
         "\tavg_tokens_per_sentence\n";
}

void WriteStatsRow(const StatsRecord &s, std::ostream &out) {
  out << s.language << '\t' << s.sentence_count << '\t' << s.token_count << '\t'
      << s.type_count << '\t' << FormatFixed(s.avg_token_length, 4) << '\t'
      << FormatFixed(s.avg_tokens_per_sentence, 4) << '\n';
}

std::vector<PhonemeSeq> GoldTypes(const Corpus &corpus) {
  std::set<PhonemeSeq> types;
  for (const auto &u : corpus.utterances()) {
    if (!u.gold_boundaries) continue;
    std::size_t start = 0;
    auto emit = [&](std::size_t end) {
      types.emplace(u.phonemes.begin() + start, u.phonemes.begin() + end);
      start = end;
    };
    for (int b : *u.gold_boundaries) emit(static_cast<std::size_t>(b));
    emit(u.phonemes.size());
  }
  return {types.begin(), types.end()};
}

}  // namespace wordisc
