#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "textmine/classify.hpp"
#include "textmine/corpus.hpp"
#include "textmine/text.hpp"

namespace textmine {

// JSON-lines corpus: {"id": str, "text": str, "meta": {str: str}} per line.
// Malformed lines raise DataError with the 1-based line number.
std::vector<RawDocument> read_corpus_jsonl(std::istream& in);
std::vector<RawDocument> read_corpus_jsonl_file(const std::string& path);

// Business profiles: {"id", "categories": [str], "description": str,
// "reviews": [str], "naics": optional str}.
std::vector<BusinessProfile> read_profiles_jsonl(std::istream& in);
std::vector<BusinessProfile> read_profiles_jsonl_file(const std::string& path);

// NAICS definitions: CSV "code,title,description" with quoted fields.
std::vector<NaicsCode> read_naics_csv(std::istream& in);
std::vector<NaicsCode> read_naics_csv_file(const std::string& path);

// One entry per line.
std::vector<std::string> read_lines(const std::string& path);
// "key<TAB>expansion" per line, keys lowercased.
std::map<std::string, std::string> read_tab_map(const std::string& path);

// key = value pipeline configuration, documented in the README.
PipelineConfig read_pipeline_config(const std::string& path,
                                    const std::string& data_dir);

// RFC-4180-ish field splitting for one record.
std::vector<std::string> split_csv_record(const std::string& line);

// FNV-1a 64-bit content digest, hex encoded.
std::string fnv1a_digest_file(const std::string& path);

// Written alongside every CLI output; identical inputs + seed reproduce
// outputs byte-identically. Deliberately excludes the output directory.
struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> config;  // resolved option snapshot
  std::map<std::string, std::string> input_digests;
};

void write_manifest(const RunManifest& manifest, const std::string& path);

std::string format_double(double v);  // shortest round-trip decimal

}  // namespace textmine
