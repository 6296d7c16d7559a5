#include "mouldnf/mould.hpp"

namespace mouldnf::detail {

void for_each_shuffle(const Word& a, const Word& b, const std::function<void(const Word&)>& visit) {
  const std::size_t ra = a.size();
  const std::size_t rb = b.size();
  std::vector<Letter> buf;
  buf.reserve(ra + rb);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t j) {
    if (i == ra && j == rb) {
      visit(Word(buf));
      return;
    }
    if (i < ra) {
      buf.push_back(a[i]);
      rec(i + 1, j);
      buf.pop_back();
    }
    if (j < rb) {
      buf.push_back(b[j]);
      rec(i, j + 1);
      buf.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace mouldnf::detail
