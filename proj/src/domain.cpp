#include "fairsp/domain.hpp"

#include <algorithm>
#include <sstream>

namespace fairsp {

namespace {

void check_permutation(const std::vector<Alt>& ranking, int m) {
  if (static_cast<int>(ranking.size()) != m)
    raise(ErrorCode::NotAPermutation, "ranking has " + std::to_string(ranking.size()) +
                                          " entries, expected " + std::to_string(m));
  std::vector<bool> seen(m, false);
  for (Alt a : ranking) {
    if (a < 1 || a > m)
      raise(ErrorCode::NotAPermutation, "alternative a" + std::to_string(a) + " out of range");
    if (seen[a - 1])
      raise(ErrorCode::NotAPermutation, "duplicate alternative a" + std::to_string(a));
    seen[a - 1] = true;
  }
}

}  // namespace

Preference::Preference(std::vector<Alt> ranking, int m) : ranking_(std::move(ranking)) {
  check_permutation(ranking_, m);
  if (!is_single_peaked(ranking_, m))
    raise(ErrorCode::NotSinglePeaked, "ranking violates single-peakedness");
  rank_of_.assign(m, 0);
  for (int k = 0; k < m; ++k) rank_of_[ranking_[k] - 1] = k + 1;
}

Alt Preference::at(int k) const {
  if (k < 1 || k > m()) raise(ErrorCode::IndexOutOfRange, "rank " + std::to_string(k));
  return ranking_[k - 1];
}

int Preference::rank_of(Alt a) const {
  if (a < 1 || a > m()) raise(ErrorCode::IndexOutOfRange, "alternative a" + std::to_string(a));
  return rank_of_[a - 1];
}

std::vector<Alt> Preference::upper_contour(Alt a) const {
  int r = rank_of(a);
  std::vector<Alt> result(ranking_.begin(), ranking_.begin() + r);
  std::sort(result.begin(), result.end());
  return result;
}

Lottery Lottery::point(int m, Alt a) {
  Lottery l(m);
  l.of(a) = Rat(1);
  return l;
}

Rat Lottery::prefix(int t) const {
  Rat sum(0);
  for (int i = 0; i < t && i < m(); ++i) sum += p[i];
  return sum;
}

Rat Lottery::mass(const std::vector<Alt>& alts) const {
  Rat sum(0);
  for (Alt a : alts) sum += of(a);
  return sum;
}

bool Lottery::valid() const {
  Rat sum(0);
  for (const Rat& r : p) {
    if (r < Rat(0)) return false;
    sum += r;
  }
  return sum == Rat(1);
}

bool is_single_peaked(const std::vector<Alt>& ranking, int m) {
  check_permutation(ranking, m);
  // Walking down from the peak, every next alternative must extend the
  // contiguous interval already covered; this is O(m).
  int lo = ranking[0], hi = ranking[0];
  for (int k = 1; k < m; ++k) {
    Alt a = ranking[k];
    if (a == lo - 1)
      lo = a;
    else if (a == hi + 1)
      hi = a;
    else
      return false;
  }
  return true;
}

std::vector<Preference> enumerate_single_peaked(int m, const Guards& guards) {
  check_m_guard(m, guards);
  // Grow rankings top-down: each step appends either neighbour of the
  // interval covered so far.
  std::vector<std::vector<Alt>> partial;
  for (Alt peak = 1; peak <= m; ++peak) partial.push_back({peak});
  for (int step = 1; step < m; ++step) {
    std::vector<std::vector<Alt>> next;
    for (const auto& seq : partial) {
      auto [lo_it, hi_it] = std::minmax_element(seq.begin(), seq.end());
      Alt lo = *lo_it, hi = *hi_it;
      if (lo > 1) {
        auto ext = seq;
        ext.push_back(lo - 1);
        next.push_back(std::move(ext));
      }
      if (hi < m) {
        auto ext = seq;
        ext.push_back(hi + 1);
        next.push_back(std::move(ext));
      }
    }
    partial = std::move(next);
  }
  std::sort(partial.begin(), partial.end());
  std::vector<Preference> result;
  result.reserve(partial.size());
  for (auto& seq : partial) result.emplace_back(std::move(seq), m);
  return result;
}

std::vector<int> s_set(const Profile& profile, int t) {
  std::vector<int> result;
  for (int i = 0; i < static_cast<int>(profile.size()); ++i)
    if (profile[i].peak() <= t) result.push_back(i + 1);
  return result;
}

Alt tau_of_peaks(const std::vector<Alt>& sorted_peaks, int t) {
  if (t == 0) return 1;
  if (t < 0 || t > static_cast<int>(sorted_peaks.size()))
    raise(ErrorCode::IndexOutOfRange, "tau index " + std::to_string(t));
  return sorted_peaks[t - 1];
}

Alt tau(const std::vector<Preference>& group_profile, int t) {
  std::vector<Alt> peaks;
  peaks.reserve(group_profile.size());
  for (const auto& pref : group_profile) peaks.push_back(pref.peak());
  std::sort(peaks.begin(), peaks.end());
  return tau_of_peaks(peaks, t);
}

std::vector<Alt> peaks_of(const Profile& profile) {
  std::vector<Alt> peaks;
  peaks.reserve(profile.size());
  for (const auto& pref : profile) peaks.push_back(pref.peak());
  return peaks;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

Alt parse_alt(const std::string& token, int m) {
  if (token.size() < 2 || token[0] != 'a')
    raise(ErrorCode::ParseError, "bad alternative token '" + token + "'");
  for (size_t i = 1; i < token.size(); ++i)
    if (!isdigit(static_cast<unsigned char>(token[i])))
      raise(ErrorCode::ParseError, "bad alternative token '" + token + "'");
  int v = std::stoi(token.substr(1));
  if (v < 1 || v > m)
    raise(ErrorCode::ParseError, "alternative " + token + " out of range for m=" + std::to_string(m));
  return v;
}

}  // namespace

Preference parse_preference(const std::string& text, int m) {
  std::vector<Alt> ranking;
  for (const auto& token : split(text, '>')) ranking.push_back(parse_alt(token, m));
  return Preference(std::move(ranking), m);
}

Profile parse_profile(const std::string& text, int m) {
  Profile profile;
  auto parts = split(text, ';');
  for (size_t i = 0; i < parts.size(); ++i) {
    try {
      profile.push_back(parse_preference(parts[i], m));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NotSinglePeaked)
        raise(ErrorCode::NotSinglePeaked, "agent " + std::to_string(i + 1) + ": " + e.what());
      throw;
    }
  }
  return profile;
}

std::string format_preference(const Preference& pref) {
  std::ostringstream out;
  for (int k = 1; k <= pref.m(); ++k) {
    if (k > 1) out << '>';
    out << 'a' << pref.at(k);
  }
  return out.str();
}

std::string format_profile(const Profile& profile) {
  std::ostringstream out;
  for (size_t i = 0; i < profile.size(); ++i) {
    if (i) out << ';';
    out << format_preference(profile[i]);
  }
  return out.str();
}

}  // namespace fairsp
