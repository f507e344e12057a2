// Command-line front end for the text analytics toolkit.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "textmine/classify.hpp"
#include "textmine/corpus.hpp"
#include "textmine/embed.hpp"
#include "textmine/error.hpp"
#include "textmine/io.hpp"
#include "textmine/lm.hpp"
#include "textmine/sentiment.hpp"
#include "textmine/text.hpp"
#include "textmine/topics.hpp"
#include "textmine/vectorize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace textmine;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string config;
  std::string out_dir = ".";
  int threads = 0;  // accepted for interface stability; stages are sequential
};

std::ofstream open_output(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  const fs::path path = fs::path(g.out_dir) / name;
  std::ofstream out(path);
  if (!out) throw DataError("cannot open for writing: " + path.string());
  return out;
}

void emit_manifest(const GlobalOpts& g, const std::string& subcommand,
                   const std::map<std::string, std::string>& config,
                   const std::vector<std::string>& inputs) {
  RunManifest m;
  m.tool_version = kVersion;
  m.subcommand = subcommand;
  m.seed = g.seed;
  m.config = config;
  for (const auto& path : inputs)
    m.input_digests[fs::path(path).filename().string()] = fnv1a_digest_file(path);
  fs::create_directories(g.out_dir);
  write_manifest(m, (fs::path(g.out_dir) / "manifest.json").string());
}

PipelineConfig load_pipeline(const GlobalOpts& g) {
  if (g.config.empty()) {
    PipelineConfig cfg;
    cfg.noise_patterns = default_noise_patterns();
    return cfg;
  }
  return read_pipeline_config(g.config, fs::path(g.config).parent_path().string());
}

std::vector<ProcessedDocument> preprocess_all(const std::vector<RawDocument>& docs,
                                              const PipelineConfig& cfg) {
  std::vector<ProcessedDocument> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(preprocess(d, cfg));
  return out;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += "\"\"";
    else q += c;
  }
  q += "\"";
  return q;
}

// ---------------------------------------------------------------- preprocess

void run_preprocess(const GlobalOpts& g, const std::string& input) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  auto out = open_output(g, "tokens.jsonl");
  for (const auto& doc : docs) {
    const ProcessedDocument p = preprocess(doc, cfg);
    json j;
    j["id"] = p.id;
    j["tokens"] = p.tokens;
    out << j.dump() << "\n";
  }
  emit_manifest(g, "preprocess", {{"config", g.config}}, {input});
}

// ----------------------------------------------------------------- vectorize

void run_vectorize(const GlobalOpts& g, const std::string& input,
                   const std::string& weighting, bool use_ppmi, std::size_t window) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  const auto processed = preprocess_all(docs, cfg);
  const Dictionary dict = build_dictionary(processed);

  SparseMatrix m;
  if (use_ppmi) {
    m = ppmi(build_term_term_matrix(processed, dict, window));
  } else {
    const Weighting w = (weighting == "tfidf") ? Weighting::tfidf : Weighting::count;
    m = build_matrix(processed, dict, w);
  }
  auto out = open_output(g, "matrix.mtx");
  write_matrix_market(m, out);
  auto vocab = open_output(g, "vocab.txt");
  for (const auto& term : dict.terms()) vocab << term << "\n";
  emit_manifest(g, "vectorize",
                {{"config", g.config},
                 {"weighting", weighting},
                 {"ppmi", use_ppmi ? "true" : "false"},
                 {"window", std::to_string(window)}},
                {input});
}

// ----------------------------------------------------------------------- lsa

void run_lsa(const GlobalOpts& g, const std::string& input, std::size_t k,
             const std::string& weighting) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  const auto processed = preprocess_all(docs, cfg);
  const Dictionary dict = build_dictionary(processed);
  const Weighting w = (weighting == "tfidf") ? Weighting::tfidf : Weighting::count;
  const SparseMatrix a = build_matrix(processed, dict, w);
  const LsaModel model = lsa_fit(a, k);
  auto out = open_output(g, "lsa_model.txt");
  save_lsa(model, out);
  auto vocab = open_output(g, "vocab.txt");
  for (const auto& term : dict.terms()) vocab << term << "\n";
  emit_manifest(g, "lsa",
                {{"config", g.config},
                 {"k", std::to_string(k)},
                 {"weighting", weighting}},
                {input});
}

// ------------------------------------------------------------------------ lm

NgramModel fit_lm(const GlobalOpts& g, const std::string& input, std::size_t order,
                  const std::string& smoothing, double add_k) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  std::vector<std::vector<std::string>> corpus;
  for (const auto& p : preprocess_all(docs, cfg)) corpus.push_back(p.tokens);
  const Smoothing s = (smoothing == "add_k") ? Smoothing::add_k : Smoothing::mle;
  return NgramModel::fit(corpus, order, s, add_k);
}

void run_lm_fit(const GlobalOpts& g, const std::string& input, std::size_t order,
                const std::string& smoothing, double add_k) {
  const NgramModel model = fit_lm(g, input, order, smoothing, add_k);
  auto out = open_output(g, "ngrams.tsv");
  model.dump(out);
  emit_manifest(g, "lm fit",
                {{"config", g.config},
                 {"order", std::to_string(order)},
                 {"smoothing", smoothing},
                 {"add_k", format_double(add_k)}},
                {input});
}

void run_lm_score(const GlobalOpts& g, const std::string& model_path,
                  const std::string& input, const std::string& smoothing,
                  double add_k) {
  std::ifstream min(model_path);
  if (!min) throw DataError("cannot open: " + model_path);
  const Smoothing s = (smoothing == "add_k") ? Smoothing::add_k : Smoothing::mle;
  const NgramModel model = NgramModel::load(min, s, add_k);
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  auto out = open_output(g, "scores.csv");
  out << "id,log_prob,impossible\n";
  std::vector<std::vector<std::string>> corpus;
  for (const auto& doc : docs) {
    const ProcessedDocument p = preprocess(doc, cfg);
    corpus.push_back(p.tokens);
    const LogProb lp = model.doc_log_prob(p.tokens);
    out << csv_quote(p.id) << "," << (lp.impossible ? "" : format_double(lp.value))
        << "," << (lp.impossible ? "true" : "false") << "\n";
  }
  out << "perplexity," << format_double(model.perplexity(corpus)) << ",\n";
  emit_manifest(g, "lm score",
                {{"config", g.config}, {"smoothing", smoothing},
                 {"add_k", format_double(add_k)}},
                {model_path, input});
}

void run_lm_generate(const GlobalOpts& g, const std::string& model_path,
                     const std::vector<std::string>& context, std::size_t max_len,
                     const std::string& smoothing, double add_k) {
  std::ifstream min(model_path);
  if (!min) throw DataError("cannot open: " + model_path);
  const Smoothing s = (smoothing == "add_k") ? Smoothing::add_k : Smoothing::mle;
  const NgramModel model = NgramModel::load(min, s, add_k);
  std::vector<std::string> ctx = context;
  if (ctx.empty() && model.order() > 1)
    ctx.assign(model.order() - 1, NgramModel::kStartPad);
  const auto tokens = model.generate(ctx, max_len, g.seed);
  auto out = open_output(g, "generated.txt");
  for (std::size_t i = 0; i < tokens.size(); ++i)
    out << tokens[i] << (i + 1 < tokens.size() ? " " : "");
  out << "\n";
  emit_manifest(g, "lm generate",
                {{"max_len", std::to_string(max_len)}, {"smoothing", smoothing}},
                {model_path});
}

// --------------------------------------------------------------------- embed

void run_embed_train(const GlobalOpts& g, const std::string& input,
                     const std::string& arch, std::size_t dim, std::size_t window,
                     std::size_t negatives, std::size_t epochs, std::size_t min_count) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  std::vector<std::vector<std::string>> corpus;
  for (const auto& p : preprocess_all(docs, cfg)) corpus.push_back(p.tokens);
  TrainConfig tc;
  tc.arch = (arch == "skipgram") ? TrainConfig::Arch::skipgram : TrainConfig::Arch::cbow;
  tc.dim = dim;
  tc.window = window;
  tc.negatives = negatives;
  tc.epochs = epochs;
  tc.min_count = min_count;
  tc.seed = g.seed;
  std::vector<double> losses;
  const EmbeddingTable table = train_word2vec(corpus, tc, &losses);
  fs::create_directories(g.out_dir);
  save_embeddings_file(table, (fs::path(g.out_dir) / "embeddings.txt").string());
  auto loss_out = open_output(g, "losses.csv");
  loss_out << "epoch,mean_loss\n";
  for (std::size_t i = 0; i < losses.size(); ++i)
    loss_out << i + 1 << "," << format_double(losses[i]) << "\n";
  emit_manifest(g, "embed train",
                {{"config", g.config},
                 {"arch", arch},
                 {"dim", std::to_string(dim)},
                 {"window", std::to_string(window)},
                 {"negatives", std::to_string(negatives)},
                 {"epochs", std::to_string(epochs)},
                 {"min_count", std::to_string(min_count)}},
                {input});
}

void run_embed_nearest(const GlobalOpts& g, const std::string& table_path,
                       const std::string& term, std::size_t k) {
  const EmbeddingTable table = load_embeddings_file(table_path);
  const auto neighbors = nearest(table, term, k);
  auto out = open_output(g, "neighbors.csv");
  out << "rank,term,cosine\n";
  for (std::size_t i = 0; i < neighbors.size(); ++i)
    out << i + 1 << "," << csv_quote(neighbors[i].first) << ","
        << format_double(neighbors[i].second) << "\n";
  emit_manifest(g, "embed nearest", {{"term", term}, {"k", std::to_string(k)}},
                {table_path});
}

void run_embed_pca(const GlobalOpts& g, const std::string& table_path, std::size_t k) {
  const EmbeddingTable table = load_embeddings_file(table_path);
  if (table.vectors.empty()) throw DataError("embed pca: empty table");
  Mat rows(table.vectors.size(), table.dim);
  std::vector<std::string> terms;
  std::size_t i = 0;
  for (const auto& [term, vec] : table.vectors) {
    terms.push_back(term);
    for (std::size_t j = 0; j < table.dim; ++j) rows(i, j) = vec[j];
    ++i;
  }
  const PcaModel model = pca_fit(rows, k);
  const Mat reduced = pca_transform(model, rows);
  EmbeddingTable out_table;
  out_table.dim = k;
  for (std::size_t r = 0; r < terms.size(); ++r) {
    const double* row = reduced.row(r);
    out_table.vectors[terms[r]].assign(row, row + k);
  }
  fs::create_directories(g.out_dir);
  save_embeddings_file(out_table, (fs::path(g.out_dir) / "embeddings_pca.txt").string());
  auto var_out = open_output(g, "explained_variance.csv");
  var_out << "component,variance\n";
  for (std::size_t c = 0; c < model.explained_variance.size(); ++c)
    var_out << c + 1 << "," << format_double(model.explained_variance[c]) << "\n";
  emit_manifest(g, "embed pca", {{"k", std::to_string(k)}}, {table_path});
}

// ----------------------------------------------------------------- sentiment

SentimentLexicon load_lexicon_file(const std::string& path, bool sentiwordnet) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open: " + path);
  return sentiwordnet ? load_sentiwordnet(in) : load_lexicon(in);
}

void run_sentiment_score(const GlobalOpts& g, const std::string& input,
                         const std::string& lexicon_path, bool sentiwordnet,
                         const std::string& mode) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  const SentimentLexicon lex = load_lexicon_file(lexicon_path, sentiwordnet);
  const ScoreMode m =
      (mode == "all_words") ? ScoreMode::all_words : ScoreMode::lexicon_words_only;
  auto out = open_output(g, "polarity.csv");
  out << "id,polarity,no_signal\n";
  for (const auto& doc : docs) {
    const ProcessedDocument p = preprocess(doc, cfg);
    const SentimentScore s = score(p.tokens, lex, m);
    out << csv_quote(p.id) << "," << format_double(s.value) << ","
        << (s.no_signal ? "true" : "false") << "\n";
  }
  emit_manifest(g, "sentiment score", {{"config", g.config}, {"mode", mode}},
                {input, lexicon_path});
}

void run_sentiment_compare(const GlobalOpts& g, const std::string& input,
                           const std::string& lexicon_path, bool sentiwordnet,
                           const std::string& group_by, const std::string& filter,
                           std::size_t sample, const std::string& mode) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  const SentimentLexicon lex = load_lexicon_file(lexicon_path, sentiwordnet);
  GroupCompareOptions opts;
  opts.group_key = group_by;
  if (!filter.empty()) {
    const auto eq = filter.find('=');
    if (eq == std::string::npos)
      throw DataError("--filter expects key=value, got '" + filter + "'");
    opts.filter_key = filter.substr(0, eq);
    opts.filter_value = filter.substr(eq + 1);
  }
  opts.sample_size = sample;
  opts.seed = g.seed;
  opts.mode =
      (mode == "all_words") ? ScoreMode::all_words : ScoreMode::lexicon_words_only;
  const GroupCompareReport report = compare_groups(docs, cfg, lex, opts);
  auto out = open_output(g, "ks_pairs.csv");
  out << "group1,group2,filter,D,p_value,n1,n2\n";
  for (const auto& pair : report.pairs) {
    out << csv_quote(pair.group1) << "," << csv_quote(pair.group2) << ","
        << csv_quote(filter) << ",";
    if (pair.skipped) {
      out << ",,,\n";
      std::cerr << "warning: " << pair.group1 << " vs " << pair.group2 << ": "
                << pair.warning << "\n";
    } else {
      out << format_double(pair.ks.statistic) << "," << format_double(pair.ks.p_value)
          << "," << pair.ks.n1 << "," << pair.ks.n2 << "\n";
    }
  }
  emit_manifest(g, "sentiment compare",
                {{"config", g.config},
                 {"group_by", group_by},
                 {"filter", filter},
                 {"sample", std::to_string(sample)},
                 {"mode", mode}},
                {input, lexicon_path});
}

// -------------------------------------------------------------------- topics

void run_topics_lda(const GlobalOpts& g, const std::string& input, std::size_t topics,
                    double alpha, double beta, std::size_t iters, std::size_t burn,
                    std::size_t words) {
  const auto docs = read_corpus_jsonl_file(input);
  const PipelineConfig cfg = load_pipeline(g);
  auto processed = preprocess_all(docs, cfg);
  processed.erase(std::remove_if(processed.begin(), processed.end(),
                                 [](const auto& p) { return p.tokens.empty(); }),
                  processed.end());
  if (processed.empty()) throw DataError("topics lda: no tokens after preprocessing");
  const Dictionary dict = build_dictionary(processed);
  LdaConfig lc;
  lc.topics = topics;
  lc.alpha = alpha;
  lc.beta = beta;
  lc.iterations = iters;
  lc.burn_in = burn;
  lc.seed = g.seed;
  const LdaModel model = LdaModel::fit(processed, dict, lc);
  auto out = open_output(g, "topic_words.csv");
  out << "topic,rank,term,probability\n";
  for (std::size_t k = 0; k < model.topics(); ++k) {
    const auto top = model.topic_words(k, words);
    for (std::size_t r = 0; r < top.size(); ++r)
      out << k << "," << r + 1 << "," << csv_quote(top[r].first) << ","
          << format_double(top[r].second) << "\n";
  }
  emit_manifest(g, "topics lda",
                {{"config", g.config},
                 {"topics", std::to_string(topics)},
                 {"alpha", format_double(alpha)},
                 {"beta", format_double(beta)},
                 {"iters", std::to_string(iters)},
                 {"burn", std::to_string(burn)},
                 {"words", std::to_string(words)}},
                {input});
}

void run_topics_rake(const GlobalOpts& g, const std::string& text_path,
                     const std::string& stopwords_path, const std::string& metric,
                     std::size_t max_len) {
  std::ifstream in(text_path);
  if (!in) throw DataError("cannot open: " + text_path);
  std::stringstream buf;
  buf << in.rdbuf();
  RakeConfig rc;
  if (!stopwords_path.empty())
    for (const auto& w : read_lines(stopwords_path)) rc.stopwords.insert(w);
  if (metric == "degree") rc.metric = RakeConfig::Metric::degree;
  else if (metric == "frequency") rc.metric = RakeConfig::Metric::frequency;
  else rc.metric = RakeConfig::Metric::ratio;
  rc.max_phrase_len = max_len;
  const auto keywords = rake_extract(buf.str(), rc);
  auto out = open_output(g, "keywords.csv");
  out << "rank,phrase,score\n";
  for (std::size_t i = 0; i < keywords.size(); ++i) {
    std::string phrase;
    for (std::size_t j = 0; j < keywords[i].phrase.size(); ++j) {
      if (j) phrase += " ";
      phrase += keywords[i].phrase[j];
    }
    out << i + 1 << "," << csv_quote(phrase) << "," << format_double(keywords[i].score)
        << "\n";
  }
  std::vector<std::string> inputs{text_path};
  if (!stopwords_path.empty()) inputs.push_back(stopwords_path);
  emit_manifest(g, "topics rake",
                {{"metric", metric}, {"max_len", std::to_string(max_len)}}, inputs);
}

// ------------------------------------------------------------------ classify

struct ClassifyInputs {
  std::vector<BusinessProfile> profiles;
  std::vector<NaicsCode> codes;
  EmbeddingTable table;
};

std::vector<std::string> naics_topic_words(const NaicsCode& code,
                                           const RakeConfig& rake_cfg,
                                           const PipelineConfig& pipeline) {
  // keywords from the official description, normalized like everything else
  std::map<std::string, double> best;
  for (const Keyword& kw :
       rake_extract(code.title + ". " + code.description, rake_cfg)) {
    for (const auto& unigram : kw.phrase) {
      auto it = best.find(unigram);
      if (it == best.end() || it->second < kw.score) best[unigram] = kw.score;
    }
  }
  std::vector<std::pair<std::string, double>> ranked(best.begin(), best.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& [term, score] : ranked) {
    RawDocument raw{"t", term, {}};
    for (const auto& norm : preprocess(raw, pipeline).tokens)
      if (seen.insert(norm).second) out.push_back(norm);
  }
  return out;
}

ClassifyInputs load_classify_inputs(const GlobalOpts& g, const std::string& profiles,
                                    const std::string& naics,
                                    const std::string& embeddings,
                                    const RakeConfig& rake_cfg,
                                    const PipelineConfig& pipeline) {
  ClassifyInputs in;
  in.profiles = read_profiles_jsonl_file(profiles);
  in.codes = read_naics_csv_file(naics);
  in.table = load_embeddings_file(embeddings);
  for (auto& code : in.codes)
    if (code.topic_words.empty())
      code.topic_words = naics_topic_words(code, rake_cfg, pipeline);
  return in;
}

void prepare_profiles(std::vector<BusinessProfile>& profiles,
                      const EmbeddingTable& table, const ClassifierConfig& cfg,
                      const PipelineConfig& pipeline, const RakeConfig& rake_cfg,
                      std::uint64_t seed) {
  LdaConfig lda;
  lda.topics = 2;
  lda.iterations = 150;
  lda.burn_in = 30;
  lda.seed = seed;
  for (auto& p : profiles) {
    {
      // category labels go through the same normalization as the corpus
      std::vector<std::string> cats;
      std::set<std::string> seen_cats;
      for (const auto& cat : p.categories) {
        RawDocument raw{"c", cat, {}};
        for (const auto& norm : preprocess(raw, pipeline).tokens)
          if (seen_cats.insert(norm).second) cats.push_back(norm);
      }
      p.categories = std::move(cats);
    }
    std::vector<ProcessedDocument> reviews;
    for (std::size_t i = 0; i < p.reviews.size(); ++i) {
      RawDocument raw{p.id + "#" + std::to_string(i), p.reviews[i], {}};
      reviews.push_back(preprocess(raw, pipeline));
    }
    const BusinessTopicWords candidates = business_topic_words(
        reviews, p.description, lda, rake_cfg, cfg.n_business_words * 2);
    // candidates from raw description text still need pipeline normalization
    std::vector<std::string> normalized;
    std::set<std::string> seen;
    for (const auto& term : candidates.terms) {
      RawDocument raw{"t", term, {}};
      for (const auto& norm : preprocess(raw, pipeline).tokens)
        if (seen.insert(norm).second) normalized.push_back(norm);
    }
    if (cfg.enrichment) {
      std::size_t dropped = 0;
      p = enrich_profile(p, normalized, table, cfg.n_business_words, &dropped);
      if (dropped > 0)
        std::cerr << "warning: " << p.id << ": " << dropped
                  << " terms had no embedding\n";
    } else if (p.topic_words.empty()) {
      p.topic_words = p.categories;
    }
  }
}

RakeConfig rake_from_pipeline(const PipelineConfig& pipeline) {
  RakeConfig rc;
  rc.stopwords = pipeline.stopwords;
  return rc;
}

void run_classify_rank(const GlobalOpts& g, const std::string& profiles,
                       const std::string& naics, const std::string& embeddings,
                       const ClassifierConfig& cfg, std::size_t top_n) {
  const PipelineConfig pipeline = load_pipeline(g);
  const RakeConfig rake_cfg = rake_from_pipeline(pipeline);
  ClassifyInputs in = load_classify_inputs(g, profiles, naics, embeddings, rake_cfg,
                                           pipeline);
  prepare_profiles(in.profiles, in.table, cfg, pipeline, rake_cfg, g.seed);
  auto out = open_output(g, "ranked.jsonl");
  for (const auto& p : in.profiles) {
    const auto ranked = rank_industries(p, in.codes, in.table, cfg);
    json j;
    j["id"] = p.id;
    j["terms"] = p.topic_words;
    json arr = json::array();
    for (std::size_t i = 0; i < ranked.size() && i < top_n; ++i) {
      json entry;
      entry["code"] = ranked[i].code;
      entry["score"] = ranked[i].score;
      if (ranked[i].unembeddable) entry["unembeddable"] = true;
      arr.push_back(entry);
    }
    j["ranked"] = arr;
    out << j.dump() << "\n";
  }
  emit_manifest(g, "classify rank",
                {{"config", g.config},
                 {"naics_words", std::to_string(cfg.n_naics_words)},
                 {"business_words", std::to_string(cfg.n_business_words)},
                 {"top_p", std::to_string(cfg.top_p)},
                 {"enrichment", cfg.enrichment ? "true" : "false"},
                 {"top_n", std::to_string(top_n)}},
                {profiles, naics, embeddings});
}

void write_eval_csv(std::ostream& out, const EvalReport& report) {
  out << "# " << report.caveat << "\n";
  out << "digit_level,n_codes,n_profiles";
  for (const auto& [k, acc] : report.topk_accuracy) out << ",top" << k;
  out << "\n";
  out << report.digit_level << "," << report.n_codes << "," << report.n_profiles;
  for (const auto& [k, acc] : report.topk_accuracy) out << "," << format_double(acc);
  out << "\n";
}

void run_classify_eval(const GlobalOpts& g, const std::string& profiles,
                       const std::string& naics, const std::string& embeddings,
                       ClassifierConfig cfg, std::size_t digits, bool defaults_set) {
  // defaults per digit level unless the caller pinned them
  if (!defaults_set) {
    if (digits == 4) {
      cfg.n_naics_words = 20;
      cfg.n_business_words = 20;
      cfg.top_p = 24;
    } else if (digits == 6) {
      cfg.n_naics_words = 12;
      cfg.n_business_words = 18;
      cfg.top_p = 14;
    }
  }
  const PipelineConfig pipeline = load_pipeline(g);
  const RakeConfig rake_cfg = rake_from_pipeline(pipeline);
  ClassifyInputs in = load_classify_inputs(g, profiles, naics, embeddings, rake_cfg,
                                           pipeline);
  in.codes.erase(std::remove_if(in.codes.begin(), in.codes.end(),
                                [&](const NaicsCode& c) {
                                  return c.code.size() != digits;
                                }),
                 in.codes.end());
  if (in.codes.empty())
    throw DataError("classify eval: no codes at digit level " + std::to_string(digits));
  prepare_profiles(in.profiles, in.table, cfg, pipeline, rake_cfg, g.seed);
  const EvalReport report = evaluate(in.profiles, in.codes, in.table, cfg);
  auto out = open_output(g, "eval.csv");
  write_eval_csv(out, report);
  emit_manifest(g, "classify eval",
                {{"config", g.config},
                 {"digits", std::to_string(digits)},
                 {"naics_words", std::to_string(cfg.n_naics_words)},
                 {"business_words", std::to_string(cfg.n_business_words)},
                 {"top_p", std::to_string(cfg.top_p)}},
                {profiles, naics, embeddings});
}

std::vector<std::size_t> parse_grid_axis(const std::string& value) {
  std::vector<std::size_t> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoul(item));
    } catch (const std::exception&) {
      throw DataError("grid: bad integer '" + item + "'");
    }
  }
  return out;
}

void run_classify_sweep(const GlobalOpts& g, const std::string& profiles,
                        const std::string& naics, const std::string& embeddings,
                        const std::string& grid_path, std::size_t business_words_hint) {
  std::map<std::string, std::vector<std::size_t>> axes;
  for (const auto& line : read_lines(grid_path)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw DataError("grid: expected 'axis = v1,v2,...' in " + grid_path);
    std::string key = line.substr(0, eq);
    key.erase(key.find_last_not_of(" \t") + 1);
    axes[key] = parse_grid_axis(line.substr(eq + 1));
  }
  for (const char* axis : {"naics_words", "business_words", "top_p"})
    if (axes[axis].empty())
      throw DataError(std::string("grid: missing axis '") + axis + "'");

  const PipelineConfig pipeline = load_pipeline(g);
  const RakeConfig rake_cfg = rake_from_pipeline(pipeline);
  ClassifyInputs in = load_classify_inputs(g, profiles, naics, embeddings, rake_cfg,
                                           pipeline);
  ClassifierConfig prep_cfg;
  prep_cfg.n_business_words = business_words_hint;
  prepare_profiles(in.profiles, in.table, prep_cfg, pipeline, rake_cfg, g.seed);
  const auto points = sweep(in.profiles, in.codes, in.table, axes["naics_words"],
                            axes["business_words"], axes["top_p"]);
  auto out = open_output(g, "sweep.csv");
  out << "naics_words,business_words,top_p";
  if (!points.empty())
    for (const auto& [k, acc] : points[0].topk_accuracy) out << ",top" << k;
  out << "\n";
  for (const auto& pt : points) {
    out << pt.n_naics_words << "," << pt.n_business_words << "," << pt.top_p;
    for (const auto& [k, acc] : pt.topk_accuracy) out << "," << format_double(acc);
    out << "\n";
  }
  emit_manifest(g, "classify sweep", {{"config", g.config}, {"grid", grid_path}},
                {profiles, naics, embeddings, grid_path});
}

// ---------------------------------------------------------------------- demo

void run_demo(const GlobalOpts& g, const std::string& data_dir) {
  const fs::path data(data_dir);
  const std::string profiles_path = (data / "demo_businesses.jsonl").string();
  const std::string naics_path = (data / "naics_demo.csv").string();
  const std::string config_path = (data / "pipeline.conf").string();

  const PipelineConfig pipeline = read_pipeline_config(config_path, data_dir);
  const RakeConfig rake_cfg = rake_from_pipeline(pipeline);

  std::vector<BusinessProfile> profiles = read_profiles_jsonl_file(profiles_path);
  std::vector<NaicsCode> codes = read_naics_csv_file(naics_path);
  for (auto& code : codes)
    code.topic_words = naics_topic_words(code, rake_cfg, pipeline);

  // train embeddings on everything textual the demo data provides
  std::vector<std::vector<std::string>> corpus;
  auto add_doc = [&](const std::string& text) {
    RawDocument raw{"c" + std::to_string(corpus.size()), text, {}};
    auto tokens = preprocess(raw, pipeline).tokens;
    if (!tokens.empty()) corpus.push_back(std::move(tokens));
  };
  for (const auto& p : profiles) {
    add_doc(p.description);
    for (const auto& r : p.reviews) add_doc(r);
  }
  for (const auto& c : codes) add_doc(c.title + ". " + c.description);

  // skip-gram: its published vectors keep co-occurrence geometry usable at
  // this corpus size, where cbow context sums collapse toward a hub
  TrainConfig tc;
  tc.arch = TrainConfig::Arch::skipgram;
  tc.dim = 16;
  tc.window = 3;
  tc.negatives = 5;
  tc.epochs = 120;  // the bundled corpus is tiny; this is still sub-second
  tc.seed = g.seed;
  const EmbeddingTable table = train_word2vec(corpus, tc);
  fs::create_directories(g.out_dir);
  save_embeddings_file(table, (fs::path(g.out_dir) / "embeddings.txt").string());

  ClassifierConfig cfg;
  cfg.n_naics_words = 12;
  cfg.n_business_words = 8;
  cfg.top_p = 24;
  prepare_profiles(profiles, table, cfg, pipeline, rake_cfg, g.seed);

  auto ranked_out = open_output(g, "ranked.jsonl");
  for (const auto& p : profiles) {
    const auto ranked = rank_industries(p, codes, table, cfg);
    json j;
    j["id"] = p.id;
    j["terms"] = p.topic_words;
    json arr = json::array();
    for (std::size_t i = 0; i < ranked.size() && i < 5; ++i) {
      json entry;
      entry["code"] = ranked[i].code;
      entry["score"] = ranked[i].score;
      arr.push_back(entry);
    }
    j["ranked"] = arr;
    ranked_out << j.dump() << "\n";
  }

  const EvalReport report = evaluate(profiles, codes, table, cfg);
  auto eval_out = open_output(g, "eval.csv");
  write_eval_csv(eval_out, report);

  emit_manifest(g, "demo",
                {{"naics_words", std::to_string(cfg.n_naics_words)},
                 {"business_words", std::to_string(cfg.n_business_words)},
                 {"top_p", std::to_string(cfg.top_p)},
                 {"dim", std::to_string(tc.dim)},
                 {"epochs", std::to_string(tc.epochs)}},
                {profiles_path, naics_path, config_path});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"text analytics toolkit: preprocessing, vectorization, language "
               "models, embeddings, sentiment, topics, industry classification"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "random seed for every stochastic stage");
  app.add_option("--config", g.config, "pipeline configuration file");
  app.add_option("--out-dir", g.out_dir, "output directory");
  app.add_option("--threads", g.threads, "worker threads, 0 = auto");

  // preprocess
  std::string pp_input;
  auto* pp = app.add_subcommand("preprocess", "clean and tokenize a corpus");
  pp->add_option("--input", pp_input, "corpus JSONL")->required();
  pp->callback([&] { run_preprocess(g, pp_input); });

  // vectorize
  std::string vec_input, vec_weighting = "count";
  bool vec_ppmi = false;
  std::size_t vec_window = 2;
  auto* vec = app.add_subcommand("vectorize", "build term-document or PPMI matrices");
  vec->add_option("--input", vec_input, "corpus JSONL")->required();
  vec->add_option("--weighting", vec_weighting, "count | tfidf")
      ->check(CLI::IsMember({"count", "tfidf"}));
  vec->add_flag("--ppmi", vec_ppmi, "emit the PPMI term-term matrix instead");
  vec->add_option("--window", vec_window, "co-occurrence window for --ppmi");
  vec->callback([&] { run_vectorize(g, vec_input, vec_weighting, vec_ppmi, vec_window); });

  // lsa
  std::string lsa_input, lsa_weighting = "count";
  std::size_t lsa_k = 2;
  auto* lsa = app.add_subcommand("lsa", "truncated SVD of the term-document matrix");
  lsa->add_option("--input", lsa_input, "corpus JSONL")->required();
  lsa->add_option("-k,--rank", lsa_k, "number of retained dimensions")->required();
  lsa->add_option("--weighting", lsa_weighting, "count | tfidf")
      ->check(CLI::IsMember({"count", "tfidf"}));
  lsa->callback([&] { run_lsa(g, lsa_input, lsa_k, lsa_weighting); });

  // lm
  auto* lm = app.add_subcommand("lm", "n-gram language models");
  lm->require_subcommand(1);
  std::string lm_input, lm_model, lm_smoothing = "mle";
  std::size_t lm_order = 2, lm_max_len = 50;
  double lm_add_k = 1.0;
  std::vector<std::string> lm_context;
  auto* lmf = lm->add_subcommand("fit", "count n-grams over a corpus");
  lmf->add_option("--input", lm_input, "corpus JSONL")->required();
  lmf->add_option("--order", lm_order, "n-gram order");
  lmf->add_option("--smoothing", lm_smoothing, "mle | add_k")
      ->check(CLI::IsMember({"mle", "add_k"}));
  lmf->add_option("--add-k", lm_add_k, "additive smoothing constant");
  lmf->callback([&] { run_lm_fit(g, lm_input, lm_order, lm_smoothing, lm_add_k); });
  auto* lms = lm->add_subcommand("score", "log-probability and perplexity");
  lms->add_option("--model", lm_model, "n-gram dump")->required();
  lms->add_option("--input", lm_input, "corpus JSONL")->required();
  lms->add_option("--smoothing", lm_smoothing, "mle | add_k")
      ->check(CLI::IsMember({"mle", "add_k"}));
  lms->add_option("--add-k", lm_add_k, "additive smoothing constant");
  lms->callback([&] { run_lm_score(g, lm_model, lm_input, lm_smoothing, lm_add_k); });
  auto* lmg = lm->add_subcommand("generate", "sample tokens from a fitted model");
  lmg->add_option("--model", lm_model, "n-gram dump")->required();
  lmg->add_option("--context", lm_context, "seed context terms");
  lmg->add_option("--max-len", lm_max_len, "token cap");
  lmg->add_option("--smoothing", lm_smoothing, "mle | add_k")
      ->check(CLI::IsMember({"mle", "add_k"}));
  lmg->add_option("--add-k", lm_add_k, "additive smoothing constant");
  lmg->callback(
      [&] { run_lm_generate(g, lm_model, lm_context, lm_max_len, lm_smoothing, lm_add_k); });

  // embed
  auto* embed = app.add_subcommand("embed", "word embeddings");
  embed->require_subcommand(1);
  std::string em_input, em_arch = "cbow", em_table, em_term;
  std::size_t em_dim = 16, em_window = 2, em_negatives = 5, em_epochs = 5,
              em_min_count = 1, em_k = 5, em_pca_k = 2;
  auto* emt = embed->add_subcommand("train", "train CBOW or skip-gram vectors");
  emt->add_option("--input", em_input, "corpus JSONL")->required();
  emt->add_option("--arch", em_arch, "cbow | skipgram")
      ->check(CLI::IsMember({"cbow", "skipgram"}));
  emt->add_option("--dim", em_dim, "vector dimension");
  emt->add_option("--window", em_window, "context window");
  emt->add_option("--negatives", em_negatives, "negative samples per example");
  emt->add_option("--epochs", em_epochs, "training epochs");
  emt->add_option("--min-count", em_min_count, "vocabulary count cutoff");
  emt->callback([&] {
    run_embed_train(g, em_input, em_arch, em_dim, em_window, em_negatives, em_epochs,
                    em_min_count);
  });
  auto* emn = embed->add_subcommand("nearest", "cosine nearest neighbors");
  emn->add_option("--table", em_table, "embedding file")->required();
  emn->add_option("--term", em_term, "query term")->required();
  emn->add_option("-k", em_k, "neighbor count");
  emn->callback([&] { run_embed_nearest(g, em_table, em_term, em_k); });
  auto* emp = embed->add_subcommand("pca", "project a table to k components");
  emp->add_option("--table", em_table, "embedding file")->required();
  emp->add_option("-k", em_pca_k, "retained components");
  emp->callback([&] { run_embed_pca(g, em_table, em_pca_k); });

  // sentiment
  auto* sent = app.add_subcommand("sentiment", "lexicon polarity and K-S comparison");
  sent->require_subcommand(1);
  std::string se_input, se_lexicon, se_mode = "lexicon_words_only", se_group,
              se_filter;
  bool se_swn = false;
  std::size_t se_sample = 0;
  auto* ses = sent->add_subcommand("score", "polarity per document");
  ses->add_option("--input", se_input, "corpus JSONL")->required();
  ses->add_option("--lexicon", se_lexicon, "lexicon file")->required();
  ses->add_flag("--sentiwordnet", se_swn, "lexicon file uses the SentiWordNet layout");
  ses->add_option("--mode", se_mode, "all_words | lexicon_words_only")
      ->check(CLI::IsMember({"all_words", "lexicon_words_only"}));
  ses->callback([&] { run_sentiment_score(g, se_input, se_lexicon, se_swn, se_mode); });
  auto* sec = sent->add_subcommand("compare", "pairwise K-S across metadata groups");
  sec->add_option("--input", se_input, "corpus JSONL")->required();
  sec->add_option("--lexicon", se_lexicon, "lexicon file")->required();
  sec->add_flag("--sentiwordnet", se_swn, "lexicon file uses the SentiWordNet layout");
  sec->add_option("--group-by", se_group, "metadata key to group by")->required();
  sec->add_option("--filter", se_filter, "metadata predicate key=value");
  sec->add_option("--sample", se_sample, "per-group subsample size, 0 = all");
  sec->add_option("--mode", se_mode, "all_words | lexicon_words_only")
      ->check(CLI::IsMember({"all_words", "lexicon_words_only"}));
  sec->callback([&] {
    run_sentiment_compare(g, se_input, se_lexicon, se_swn, se_group, se_filter,
                          se_sample, se_mode);
  });

  // topics
  auto* topics = app.add_subcommand("topics", "LDA topics and RAKE keywords");
  topics->require_subcommand(1);
  std::string to_input, to_text, to_stopwords, to_metric = "ratio";
  std::size_t to_topics = 2, to_iters = 1000, to_burn = 200, to_words = 10,
              to_max_len = 8;
  double to_alpha = 0.0, to_beta = 0.01;
  auto* tol = topics->add_subcommand("lda", "collapsed Gibbs topic model");
  tol->add_option("--input", to_input, "corpus JSONL")->required();
  tol->add_option("--topics", to_topics, "topic count");
  tol->add_option("--alpha", to_alpha, "document-topic prior, 0 = 50/topics");
  tol->add_option("--beta", to_beta, "topic-word prior");
  tol->add_option("--iters", to_iters, "Gibbs iterations");
  tol->add_option("--burn", to_burn, "burn-in iterations");
  tol->add_option("--words", to_words, "top words per topic");
  tol->callback([&] {
    run_topics_lda(g, to_input, to_topics, to_alpha, to_beta, to_iters, to_burn,
                   to_words);
  });
  auto* tor = topics->add_subcommand("rake", "keyword extraction from raw text");
  tor->add_option("--text", to_text, "plain text file")->required();
  tor->add_option("--stopwords", to_stopwords, "stopword list");
  tor->add_option("--metric", to_metric, "degree | frequency | ratio")
      ->check(CLI::IsMember({"degree", "frequency", "ratio"}));
  tor->add_option("--max-phrase-len", to_max_len, "candidate phrase cap");
  tor->callback([&] { run_topics_rake(g, to_text, to_stopwords, to_metric, to_max_len); });

  // classify
  auto* classify = app.add_subcommand("classify", "industry code ranking");
  classify->require_subcommand(1);
  std::string cl_profiles, cl_naics, cl_embeddings, cl_grid;
  ClassifierConfig cl_cfg;
  std::size_t cl_top_n = 5, cl_digits = 2;
  bool cl_no_enrich = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--profiles", cl_profiles, "business profiles JSONL")->required();
    cmd->add_option("--naics", cl_naics, "NAICS definitions CSV")->required();
    cmd->add_option("--embeddings", cl_embeddings, "embedding table")->required();
  };
  auto* clr = classify->add_subcommand("rank", "rank codes per business");
  add_common(clr);
  clr->add_option("--naics-words", cl_cfg.n_naics_words, "terms per code");
  clr->add_option("--business-words", cl_cfg.n_business_words, "terms per business");
  clr->add_option("--top-p", cl_cfg.top_p, "averaged pair count");
  clr->add_option("--top-n", cl_top_n, "ranks emitted per business");
  clr->add_flag("--no-enrich", cl_no_enrich, "skip topic-word enrichment");
  clr->callback([&] {
    cl_cfg.enrichment = !cl_no_enrich;
    run_classify_rank(g, cl_profiles, cl_naics, cl_embeddings, cl_cfg, cl_top_n);
  });
  auto* cle = classify->add_subcommand("eval", "top-k accuracy against weak labels");
  add_common(cle);
  cle->add_option("--digits", cl_digits, "code digit level 2 | 4 | 6")
      ->check(CLI::IsMember({"2", "4", "6"}));
  auto* opt_nw = cle->add_option("--naics-words", cl_cfg.n_naics_words, "terms per code");
  auto* opt_bw =
      cle->add_option("--business-words", cl_cfg.n_business_words, "terms per business");
  auto* opt_tp = cle->add_option("--top-p", cl_cfg.top_p, "averaged pair count");
  cle->callback([&] {
    const bool pinned = opt_nw->count() || opt_bw->count() || opt_tp->count();
    run_classify_eval(g, cl_profiles, cl_naics, cl_embeddings, cl_cfg, cl_digits,
                      pinned);
  });
  auto* cls = classify->add_subcommand("sweep", "hyperparameter grid evaluation");
  add_common(cls);
  cls->add_option("--grid", cl_grid, "grid file with axis = v1,v2,... lines")
      ->required();
  cls->add_option("--business-words", cl_cfg.n_business_words,
                  "enrichment size used while preparing profiles");
  cls->callback([&] {
    run_classify_sweep(g, cl_profiles, cl_naics, cl_embeddings, cl_grid,
                       cl_cfg.n_business_words);
  });

  // demo
  std::string demo_data = "data";
  auto* demo = app.add_subcommand("demo", "end-to-end run on the bundled mini-corpus");
  demo->add_option("--data-dir", demo_data, "bundled data directory");
  demo->callback([&] { run_demo(g, demo_data); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const DataError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
