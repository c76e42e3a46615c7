#include "pivotclr/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pivotclr {

namespace {

bool is_reserved_literal(std::string_view token) {
  return token == Vocabulary::kPadToken || token == Vocabulary::kClsToken ||
         token == Vocabulary::kSepToken || token == Vocabulary::kUnkToken ||
         token == Vocabulary::kNullToken;
}

std::int32_t reserved_id(std::string_view token) {
  if (token == Vocabulary::kPadToken) return Vocabulary::kPadId;
  if (token == Vocabulary::kClsToken) return Vocabulary::kClsId;
  if (token == Vocabulary::kSepToken) return Vocabulary::kSepId;
  if (token == Vocabulary::kUnkToken) return Vocabulary::kUnkId;
  return Vocabulary::kNullId;
}

}  // namespace

std::vector<std::string> whitespace_tokens(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.emplace_back(text.substr(start, i - start));
  }
  return tokens;
}

std::string lowercase_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Vocabulary::Vocabulary() {
  insert(kPadToken);
  insert(kClsToken);
  insert(kSepToken);
  insert(kUnkToken);
  insert(kNullToken);
}

void Vocabulary::insert(std::string token) {
  const auto id = static_cast<std::int32_t>(id_to_token_.size());
  auto [it, fresh] = token_to_id_.emplace(token, id);
  if (!fresh) throw std::logic_error("Vocabulary: duplicate token \"" + token + "\"");
  id_to_token_.push_back(std::move(token));
}

Vocabulary Vocabulary::build(const std::vector<std::string>& corpus, std::size_t min_freq) {
  if (corpus.empty()) throw std::invalid_argument("build_vocab: empty corpus");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& text : corpus) {
    for (auto& token : whitespace_tokens(text)) {
      if (is_reserved_literal(token)) continue;
      ++freq[lowercase_ascii(token)];
    }
  }
  std::vector<std::pair<std::string, std::size_t>> entries;
  entries.reserve(freq.size());
  for (auto& [token, n] : freq) {
    if (n >= min_freq) entries.emplace_back(token, n);
  }
  std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  Vocabulary vocab;
  for (auto& [token, n] : entries) vocab.insert(std::move(token));
  return vocab;
}

std::int32_t Vocabulary::id_of(std::string_view token) const {
  auto it = token_to_id_.find(std::string(token));
  return it == token_to_id_.end() ? kUnkId : it->second;
}

const std::string& Vocabulary::token_of(std::int32_t id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw std::out_of_range("Vocabulary: id " + std::to_string(id) + " out of range");
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

void Vocabulary::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("Vocabulary::save: cannot open " + path.string());
  for (std::size_t id = 0; id < id_to_token_.size(); ++id) {
    out << id_to_token_[id] << '\t' << id << '\n';
  }
  if (!out) throw std::runtime_error("Vocabulary::save: write error on " + path.string());
}

Vocabulary Vocabulary::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("Vocabulary::load: cannot open " + path.string());
  std::map<std::int32_t, std::string> by_id;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw std::runtime_error("Vocabulary::load: malformed line \"" + line + "\"");
    std::string token = line.substr(0, tab);
    const std::int32_t id = std::stoi(line.substr(tab + 1));
    if (!by_id.emplace(id, std::move(token)).second) {
      throw std::runtime_error("Vocabulary::load: duplicate id " + std::to_string(id));
    }
  }
  if (by_id.size() < kReservedCount) throw std::runtime_error("Vocabulary::load: missing reserved tokens");
  Vocabulary vocab;
  for (const auto& [id, token] : by_id) {
    if (static_cast<std::size_t>(id) < kReservedCount) {
      if (vocab.id_to_token_[static_cast<std::size_t>(id)] != token) {
        throw std::runtime_error("Vocabulary::load: reserved id " + std::to_string(id) +
                                 " bound to \"" + token + "\"");
      }
      continue;
    }
    if (static_cast<std::size_t>(id) != vocab.id_to_token_.size()) {
      throw std::runtime_error("Vocabulary::load: non-contiguous id " + std::to_string(id));
    }
    vocab.insert(token);
  }
  return vocab;
}

std::size_t TokenSequence::real_length() const {
  std::size_t n = 0;
  for (auto m : mask) n += m;
  return n;
}

std::string serialize_column(const std::string& header, const std::vector<CellValue>& values) {
  if (header.empty()) throw std::invalid_argument("serialize_column: empty header");
  std::string out = header;
  for (const auto& v : values) {
    out += ' ';
    out += v.display();
  }
  return out;
}

std::string serialize_table(const Table& t) {
  if (t.num_cols() == 0) throw std::invalid_argument("serialize_table: table has no columns");
  std::string out = Vocabulary::kClsToken;
  for (std::size_t c = 0; c < t.num_cols(); ++c) {
    std::vector<CellValue> column;
    column.reserve(t.num_rows());
    for (const auto& row : t.rows()) column.push_back(row[c]);
    out += ' ';
    out += serialize_column(t.headers()[c], column);
    out += ' ';
    out += Vocabulary::kSepToken;
  }
  return out;
}

TokenSequence encode(const std::string& text, const Vocabulary& vocab, std::size_t max_len) {
  if (max_len < 2) throw std::invalid_argument("encode: max_len must be >= 2");
  const auto tokens = whitespace_tokens(text);
  if (tokens.empty() || tokens[0] != Vocabulary::kClsToken) {
    throw std::invalid_argument("encode: text must begin with [CLS]");
  }

  std::vector<std::int32_t> ids;
  ids.reserve(std::min(tokens.size(), max_len));
  for (const auto& token : tokens) {
    if (ids.size() == max_len) break;
    if (is_reserved_literal(token)) {
      ids.push_back(reserved_id(token));
    } else {
      ids.push_back(vocab.id_of(lowercase_ascii(token)));
    }
  }
  if (tokens.size() > max_len) ids.back() = Vocabulary::kSepId;

  TokenSequence seq;
  seq.ids = std::move(ids);
  seq.mask.assign(seq.ids.size(), 1);
  seq.ids.resize(max_len, Vocabulary::kPadId);
  seq.mask.resize(max_len, 0);
  return seq;
}

std::vector<std::string> decode(const TokenSequence& seq, const Vocabulary& vocab) {
  std::vector<std::string> tokens;
  for (std::size_t i = 0; i < seq.ids.size(); ++i) {
    if (i < seq.mask.size() && seq.mask[i]) tokens.push_back(vocab.token_of(seq.ids[i]));
  }
  return tokens;
}

}  // namespace pivotclr
