#include "textmine/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "textmine/error.hpp"

namespace textmine {
namespace {

using nlohmann::json;

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  return in;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

json parse_line(const std::string& line, std::size_t lineno) {
  json j = json::parse(line, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw DataError("jsonl: malformed line " + std::to_string(lineno));
  return j;
}

}  // namespace

std::vector<RawDocument> read_corpus_jsonl(std::istream& in) {
  std::vector<RawDocument> docs;
  std::set<std::string> ids;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const json j = parse_line(line, lineno);
    if (!j.contains("id") || !j["id"].is_string() || j["id"].get<std::string>().empty())
      throw DataError("jsonl: missing or empty 'id' at line " + std::to_string(lineno));
    if (!j.contains("text") || !j["text"].is_string())
      throw DataError("jsonl: missing 'text' at line " + std::to_string(lineno));
    RawDocument doc;
    doc.id = j["id"].get<std::string>();
    if (!ids.insert(doc.id).second)
      throw DataError("jsonl: duplicate id '" + doc.id + "' at line " +
                      std::to_string(lineno));
    doc.text = j["text"].get<std::string>();
    if (j.contains("meta")) {
      if (!j["meta"].is_object())
        throw DataError("jsonl: 'meta' is not an object at line " + std::to_string(lineno));
      for (const auto& [key, value] : j["meta"].items()) {
        if (!value.is_string())
          throw DataError("jsonl: meta value for '" + key + "' not a string at line " +
                          std::to_string(lineno));
        doc.meta[key] = value.get<std::string>();
      }
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

std::vector<RawDocument> read_corpus_jsonl_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_corpus_jsonl(in);
}

std::vector<BusinessProfile> read_profiles_jsonl(std::istream& in) {
  std::vector<BusinessProfile> profiles;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const json j = parse_line(line, lineno);
    if (!j.contains("id") || !j["id"].is_string())
      throw DataError("profiles: missing 'id' at line " + std::to_string(lineno));
    BusinessProfile p;
    p.id = j["id"].get<std::string>();
    if (j.contains("categories"))
      for (const auto& c : j["categories"]) p.categories.push_back(c.get<std::string>());
    if (j.contains("description")) p.description = j["description"].get<std::string>();
    if (j.contains("reviews"))
      for (const auto& r : j["reviews"]) p.reviews.push_back(r.get<std::string>());
    if (j.contains("naics") && j["naics"].is_string()) {
      const std::string code = j["naics"].get<std::string>();
      if (code.size() != 2 && code.size() != 4 && code.size() != 6)
        throw DataError("profiles: naics code must have 2/4/6 digits at line " +
                        std::to_string(lineno));
      for (char c : code)
        if (c < '0' || c > '9')
          throw DataError("profiles: non-digit naics code at line " +
                          std::to_string(lineno));
      p.true_naics = code;
    }
    profiles.push_back(std::move(p));
  }
  return profiles;
}

std::vector<BusinessProfile> read_profiles_jsonl_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_profiles_jsonl(in);
}

std::vector<std::string> split_csv_record(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(field));
      field.clear();
    } else if (c != '\r') {
      field.push_back(c);
    }
  }
  fields.push_back(std::move(field));
  return fields;
}

std::vector<NaicsCode> read_naics_csv(std::istream& in) {
  std::vector<NaicsCode> codes;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto fields = split_csv_record(line);
    if (lineno == 1 && !fields.empty() && fields[0] == "code") continue;  // header
    if (fields.size() < 3)
      throw DataError("naics csv: expected code,title,description at line " +
                      std::to_string(lineno));
    NaicsCode code;
    code.code = trim(fields[0]);
    code.title = fields[1];
    code.description = fields[2];
    if (code.code.empty() || code.title.empty())
      throw DataError("naics csv: empty code or title at line " + std::to_string(lineno));
    for (char c : code.code)
      if (c < '0' || c > '9')
        throw DataError("naics csv: non-digit code at line " + std::to_string(lineno));
    codes.push_back(std::move(code));
  }
  return codes;
}

std::vector<NaicsCode> read_naics_csv_file(const std::string& path) {
  auto in = open_or_throw(path);
  return read_naics_csv(in);
}

std::vector<std::string> read_lines(const std::string& path) {
  auto in = open_or_throw(path);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') out.push_back(t);
  }
  return out;
}

std::map<std::string, std::string> read_tab_map(const std::string& path) {
  auto in = open_or_throw(path);
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto tab = t.find('\t');
    if (tab == std::string::npos || tab == 0)
      throw DataError(path + ": missing tab separator at line " + std::to_string(lineno));
    std::string key = t.substr(0, tab);
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out[key] = trim(t.substr(tab + 1));
  }
  return out;
}

PipelineConfig read_pipeline_config(const std::string& path, const std::string& data_dir) {
  PipelineConfig cfg;
  cfg.noise_patterns = default_noise_patterns();
  auto resolve = [&](const std::string& p) {
    if (!p.empty() && p[0] == '/') return p;
    return data_dir.empty() ? p : data_dir + "/" + p;
  };
  auto in = open_or_throw(path);
  std::string line;
  std::size_t lineno = 0;
  bool custom_noise = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw DataError(path + ": expected 'key = value' at line " + std::to_string(lineno));
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key == "lowercase") {
      cfg.lowercase = (value == "true" || value == "1" || value == "yes");
    } else if (key == "normalizer") {
      if (value == "none")
        cfg.normalizer = Normalizer::none;
      else if (value == "porter")
        cfg.normalizer = Normalizer::porter_stem;
      else if (value == "lemma")
        cfg.normalizer = Normalizer::lemma;
      else
        throw DataError(path + ": unknown normalizer '" + value + "' at line " +
                        std::to_string(lineno));
    } else if (key == "stopwords") {
      for (const auto& word : read_lines(resolve(value))) cfg.stopwords.insert(word);
    } else if (key == "contractions") {
      cfg.contraction_map = read_tab_map(resolve(value));
    } else if (key == "lemma_exceptions") {
      cfg.lemma_exceptions = read_tab_map(resolve(value));
    } else if (key == "noise_pattern") {
      if (!custom_noise) {
        cfg.noise_patterns.clear();
        custom_noise = true;
      }
      cfg.noise_patterns.push_back(value);
    } else if (key == "noise") {
      if (value == "none") {
        cfg.noise_patterns.clear();
        custom_noise = true;
      } else if (value == "default") {
        cfg.noise_patterns = default_noise_patterns();
      } else {
        throw DataError(path + ": unknown noise setting at line " + std::to_string(lineno));
      }
    } else {
      throw DataError(path + ": unknown key '" + key + "' at line " +
                      std::to_string(lineno));
    }
  }
  return cfg;
}

std::string fnv1a_digest_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open: " + path);
  std::uint64_t hash = 14695981039346656037ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 1099511628211ULL;
    }
    if (!in) break;
  }
  std::ostringstream out;
  out << std::hex << hash;
  return out.str();
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  json j;
  j["tool_version"] = manifest.tool_version;
  j["subcommand"] = manifest.subcommand;
  j["seed"] = manifest.seed;
  j["config"] = manifest.config;
  j["inputs"] = manifest.input_digests;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace textmine
