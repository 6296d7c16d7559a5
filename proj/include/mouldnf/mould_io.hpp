#ifndef MOULDNF_MOULD_IO_HPP
#define MOULDNF_MOULD_IO_HPP

#include <vector>

#include <json.hpp>

#include "mouldnf/mould.hpp"

namespace mouldnf {

/// {"<word>": [re, im], ...}. Exact scalars are written as rational strings.
nlohmann::json dump_mould_table(const Mould& m, const std::vector<Word>& words);
nlohmann::json dump_mould_table(const ExactMould& m, const std::vector<Word>& words);

/// Inverse of dump_mould_table; words missing from the table evaluate to zero.
Mould load_mould_table(const nlohmann::json& j);
ExactMould load_exact_mould_table(const nlohmann::json& j);

}  // namespace mouldnf

#endif  // MOULDNF_MOULD_IO_HPP
