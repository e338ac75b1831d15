#ifndef RELIASCAN_RELIASCAN_HPP_
#define RELIASCAN_RELIASCAN_HPP_

// Umbrella header: complaint ingestion, text normalization, the
// term-document matrix, truncated SVD with varimax rotation, the topic
// registry, and expectation-based Poisson surveillance.

#include "reliascan/config.hpp"
#include "reliascan/corpus.hpp"
#include "reliascan/csv.hpp"
#include "reliascan/errors.hpp"
#include "reliascan/period.hpp"
#include "reliascan/pipeline.hpp"
#include "reliascan/porter.hpp"
#include "reliascan/soundex.hpp"
#include "reliascan/surveillance.hpp"
#include "reliascan/svd.hpp"
#include "reliascan/svg_report.hpp"
#include "reliascan/term_doc_matrix.hpp"
#include "reliascan/text_prep.hpp"
#include "reliascan/tokenizer.hpp"
#include "reliascan/topics.hpp"
#include "reliascan/varimax.hpp"

#endif  // RELIASCAN_RELIASCAN_HPP_
