#pragma once

#include <string>

#include "filldist/chains.hpp"
#include "filldist/complex.hpp"
#include "filldist/embed.hpp"
#include "filldist/spectra.hpp"

namespace filldist {

/// Rounds to 12 significant digits, the precision used by every text
/// serialization in this library.
double round12(double value);
std::string format12(double value);

/// Complex JSON: {"n": <int>, "faces": [[i,j,k], ...]} with each triple
/// strictly increasing and the list sorted lexicographically without
/// duplicates.  Parsers throw IoError on any violation.
std::string complex_to_json(const Complex2& X);
Complex2 parse_complex_json(const std::string& text);
Complex2 read_complex_json(const std::string& path);
void write_complex_json(const Complex2& X, const std::string& path);

/// Embedding JSON: {"n": <int>, "dim": <int>, "coords": [[...], ...]}.
std::string embedding_to_json(const Embedding& emb);
Embedding parse_embedding_json(const std::string& text);
Embedding read_embedding_json(const std::string& path);
void write_embedding_json(const Embedding& emb, const std::string& path);

/// FillSummary JSON: {"sizes": [...], "infeasible": k, "min": ...,
/// "max": ..., "sum_sq": ...}; infeasible sizes and absent aggregates
/// are null.
std::string fill_summary_to_json(const FillSummary& summary);

std::string spectral_report_to_json(const SpectralReport& report);
std::string inequality_report_to_json(const InequalityReport& report);
std::string certificate_to_json(const Certificate& cert);

/// Whole-file read; throws IoError when the file cannot be opened.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace filldist
