#include "seqvote/preflib.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace seqvote {

namespace {

struct Line {
  int number;
  std::string text;
};

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Non-blank, non-comment lines with their 1-based numbers.
std::vector<Line> data_lines(const std::string& text) {
  std::vector<Line> out;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    auto t = trim(raw);
    if (t.empty() || t[0] == '#') continue;
    out.push_back({number, t});
  }
  return out;
}

long long parse_int(const std::string& token, int line) {
  auto t = trim(token);
  size_t used = 0;
  long long value = 0;
  try {
    value = std::stoll(t, &used);
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + t + "'");
  }
  if (used != t.size()) throw ParseError(line, "expected an integer, got '" + t + "'");
  return value;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

int alternative_index(const std::string& token, int m, int line) {
  long long id = parse_int(token, line);
  if (id < 1 || id > m) throw ParseError(line, "alternative id " + std::to_string(id) +
                                                   " out of range 1.." + std::to_string(m));
  return static_cast<int>(id - 1);
}

// "count, item, item, ..." where an item is an id or a {id,id,...} tied group.
Voter parse_order_line(const Line& line, int m) {
  auto comma = line.text.find(',');
  if (comma == std::string::npos) throw ParseError(line.number, "expected 'count, ranking...'");
  long long count = parse_int(line.text.substr(0, comma), line.number);
  if (count < 1) throw ParseError(line.number, "multiplicity must be positive");

  std::vector<std::vector<int>> groups;
  std::vector<bool> seen(m, false);
  std::string rest = line.text.substr(comma + 1);
  size_t i = 0;
  auto skip_spaces = [&] {
    while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r')) ++i;
  };
  auto note = [&](int a) {
    if (seen[a])
      throw ParseError(line.number, "alternative " + std::to_string(a + 1) + " listed twice");
    seen[a] = true;
  };
  while (true) {
    skip_spaces();
    if (i >= rest.size()) break;
    if (rest[i] == '{') {
      size_t close = rest.find('}', i);
      if (close == std::string::npos) throw ParseError(line.number, "unterminated tied group");
      std::vector<int> group;
      for (const auto& tok : split(rest.substr(i + 1, close - i - 1), ',')) {
        int a = alternative_index(tok, m, line.number);
        note(a);
        group.push_back(a);
      }
      if (group.empty()) throw ParseError(line.number, "empty tied group");
      groups.push_back(std::move(group));
      i = close + 1;
      skip_spaces();
      if (i < rest.size()) {
        if (rest[i] != ',') throw ParseError(line.number, "expected ',' after tied group");
        ++i;
      }
    } else {
      size_t comma2 = rest.find(',', i);
      auto tok = rest.substr(i, comma2 == std::string::npos ? std::string::npos : comma2 - i);
      if (trim(tok).empty()) throw ParseError(line.number, "empty ranking entry");
      int a = alternative_index(tok, m, line.number);
      note(a);
      groups.push_back({a});
      i = comma2 == std::string::npos ? rest.size() : comma2 + 1;
    }
  }

  std::vector<std::pair<int, int>> pairs;
  for (size_t g = 0; g + 1 < groups.size(); ++g)
    for (int a : groups[g])
      for (int b : groups[g + 1]) pairs.emplace_back(a, b);
  return Voter{StrictOrder::from_pairs(m, pairs), 1, count};
}

// Ranked groups of an order: a chain of mutually incomparable groups followed
// by alternatives incomparable to everything (left unranked). Throws for
// orders without this shape.
std::vector<std::vector<int>> layer_groups(const StrictOrder& order) {
  int m = order.num_alternatives();
  if (order.is_linear()) {
    std::vector<std::vector<int>> groups;
    for (int a : order.as_ranking()) groups.push_back({a});
    return groups;
  }
  std::vector<int> ranked;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (b != a && order.comparable(a, b)) {
        ranked.push_back(a);
        break;
      }
  std::vector<std::vector<int>> groups;
  std::vector<bool> placed(m, false);
  size_t remaining = ranked.size();
  while (remaining > 0) {
    std::vector<int> layer;
    for (int a : ranked) {
      if (placed[a]) continue;
      bool maximal = true;
      for (int b : ranked)
        if (!placed[b] && order.prefers(b, a)) {
          maximal = false;
          break;
        }
      if (maximal) layer.push_back(a);
    }
    for (int a : layer) {
      for (int b : ranked)
        if (!placed[b] && std::find(layer.begin(), layer.end(), b) == layer.end() &&
            !order.prefers(a, b))
          throw UsageError("order is not layer-representable in the Preflib format");
      placed[a] = true;
    }
    remaining -= layer.size();
    groups.push_back(std::move(layer));
  }
  return groups;
}

}  // namespace

Profile parse_preflib(const std::string& text) {
  auto lines = data_lines(text);
  size_t i = 0;
  auto need = [&](const char* what) -> const Line& {
    if (i >= lines.size())
      throw ParseError(lines.empty() ? 0 : lines.back().number, std::string("missing ") + what);
    return lines[i++];
  };

  const auto& mline = need("alternative count");
  long long m64 = parse_int(mline.text, mline.number);
  if (m64 < 1 || m64 > 1000) throw ParseError(mline.number, "implausible alternative count");
  int m = static_cast<int>(m64);

  Profile profile;
  profile.labels.assign(m, "");
  for (int a = 0; a < m; ++a) {
    const auto& line = need("alternative name line");
    auto comma = line.text.find(',');
    if (comma == std::string::npos) throw ParseError(line.number, "expected 'id,label'");
    int id = alternative_index(line.text.substr(0, comma), m, line.number);
    auto label = trim(line.text.substr(comma + 1));
    if (label.empty()) throw ParseError(line.number, "empty label");
    if (!profile.labels[id].empty())
      throw ParseError(line.number, "duplicate alternative id " + std::to_string(id + 1));
    profile.labels[id] = label;
  }

  const auto& header = need("count header");
  auto fields = split(header.text, ',');
  if (fields.size() != 3)
    throw ParseError(header.number, "expected 'voters, sum of votes, unique orders'");
  long long sum_votes = parse_int(fields[1], header.number);
  long long unique = parse_int(fields[2], header.number);
  if (unique < 0 || sum_votes < 0) throw ParseError(header.number, "negative count");

  long long total = 0;
  for (long long k = 0; k < unique; ++k) {
    const auto& line = need("ranked order line");
    profile.voters.push_back(parse_order_line(line, m));
    total += profile.voters.back().multiplicity;
  }
  if (i < lines.size()) throw ParseError(lines[i].number, "unexpected trailing content");
  if (total != sum_votes)
    throw ParseError(header.number, "declared sum of votes is " + std::to_string(sum_votes) +
                                        " but order lines add up to " + std::to_string(total));
  profile.validate();
  return profile;
}

std::string write_preflib(const Profile& profile) {
  profile.validate();
  for (const auto& v : profile.voters)
    if (v.weight != 1)
      throw UsageError("weighted profiles cannot be written in the Preflib format");

  // Merge identical orders, keeping first-seen ordering.
  std::map<std::vector<std::pair<int, int>>, size_t> index;
  std::vector<std::pair<const StrictOrder*, long long>> grouped;
  for (const auto& v : profile.voters) {
    auto key = v.order.pairs();
    auto it = index.find(key);
    if (it != index.end()) {
      grouped[it->second].second += v.multiplicity;
    } else {
      index.emplace(std::move(key), grouped.size());
      grouped.emplace_back(&v.order, v.multiplicity);
    }
  }

  std::ostringstream out;
  int m = profile.num_alternatives();
  out << m << "\n";
  for (int a = 0; a < m; ++a) out << a + 1 << "," << profile.labels[a] << "\n";
  out << profile.num_voters() << "," << profile.num_voters() << "," << grouped.size() << "\n";
  for (const auto& [order, count] : grouped) {
    out << count;
    for (const auto& group : layer_groups(*order)) {
      if (group.size() == 1) {
        out << "," << group[0] + 1;
      } else {
        out << ",{";
        for (size_t j = 0; j < group.size(); ++j) out << (j ? "," : "") << group[j] + 1;
        out << "}";
      }
    }
    out << "\n";
  }
  return out.str();
}

PartialAgenda parse_agenda(const std::string& text, const Profile& profile) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& line : data_lines(text)) {
    std::vector<int> chain;
    for (const auto& tok : split(line.text, '>')) {
      auto label = trim(tok);
      if (label.empty()) throw ParseError(line.number, "empty agenda entry");
      try {
        chain.push_back(profile.alternative_id(label));
      } catch (const UsageError&) {
        throw ParseError(line.number, "unknown alternative label '" + label + "'");
      }
    }
    for (size_t j = 0; j + 1 < chain.size(); ++j) pairs.emplace_back(chain[j], chain[j + 1]);
  }
  try {
    return StrictOrder::from_pairs(profile.num_alternatives(), pairs);
  } catch (const UsageError& e) {
    throw ParseError(0, std::string("invalid agenda: ") + e.what());
  }
}

}  // namespace seqvote
