#include "cubsc/word.hpp"

#include <algorithm>

namespace cubsc {

bool is_word(const std::string& w) {
  return std::all_of(w.begin(), w.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

std::string inverse_word(const std::string& w) {
  std::string out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(inv_letter(*it));
  return out;
}

std::string free_reduce(const std::string& w) {
  std::string out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == inv_letter(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

bool is_freely_reduced(const std::string& w) {
  for (std::size_t i = 0; i + 1 < w.size(); ++i)
    if (w[i] == inv_letter(w[i + 1])) return false;
  return true;
}

bool is_cyclically_reduced(const std::string& w) {
  if (!is_freely_reduced(w)) return false;
  if (w.size() >= 2 && w.front() == inv_letter(w.back())) return false;
  return true;
}

std::string rotate_word(const std::string& w, std::size_t shift) {
  if (w.empty()) return w;
  shift %= w.size();
  return w.substr(shift) + w.substr(0, shift);
}

std::string least_rotation(const std::string& w) {
  std::string best = w;
  for (std::size_t i = 1; i < w.size(); ++i) {
    std::string r = rotate_word(w, i);
    if (r < best) best = r;
  }
  return best;
}

std::string cyclic_canonical(const std::string& w) {
  std::string a = least_rotation(w);
  std::string b = least_rotation(inverse_word(w));
  return a < b ? a : b;
}

std::vector<SymmetrizedOccurrence> symmetrized_set(
    const std::vector<std::string>& relators) {
  std::vector<SymmetrizedOccurrence> out;
  for (int i = 0; i < static_cast<int>(relators.size()); ++i) {
    const std::string& r = relators[i];
    const std::string rinv = inverse_word(r);
    for (int s = 0; s < static_cast<int>(r.size()); ++s) {
      out.push_back({i, false, s, rotate_word(r, s)});
      out.push_back({i, true, s, rotate_word(rinv, s)});
    }
  }
  return out;
}

}  // namespace cubsc
