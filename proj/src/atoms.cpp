#include "infnom/atoms.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <unordered_map>

namespace infnom {

namespace {

struct NameTable {
  std::shared_mutex mutex;
  std::unordered_map<std::string, std::uint32_t> by_name;
  std::unordered_map<std::uint32_t, std::string> by_index;
  std::uint32_t next = 0;
};

NameTable& table() {
  static NameTable t;
  return t;
}

std::optional<std::uint32_t> raw_index(std::string_view name) {
  if (name.size() < 2 || name[0] != '_') return std::nullopt;
  std::uint32_t value = 0;
  auto first = name.data() + 1;
  auto last = name.data() + name.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

Atom Atom::named(std::string_view name) {
  auto& t = table();
  if (auto idx = raw_index(name)) {
    std::unique_lock lock(t.mutex);
    t.next = std::max(t.next, *idx + 1);
    return Atom(*idx);
  }
  {
    std::shared_lock lock(t.mutex);
    if (auto it = t.by_name.find(std::string(name)); it != t.by_name.end())
      return Atom(it->second);
  }
  std::unique_lock lock(t.mutex);
  if (auto it = t.by_name.find(std::string(name)); it != t.by_name.end())
    return Atom(it->second);
  while (t.by_index.count(t.next)) ++t.next;
  std::uint32_t idx = t.next++;
  t.by_name.emplace(std::string(name), idx);
  t.by_index.emplace(idx, std::string(name));
  return Atom(idx);
}

std::string Atom::name() const {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  if (auto it = t.by_index.find(index_); it != t.by_index.end()) return it->second;
  return "_" + std::to_string(index_);
}

// ---------------------------------------------------------------------------

AtomSet::AtomSet(std::initializer_list<Atom> atoms) : AtomSet(std::vector<Atom>(atoms)) {}

AtomSet::AtomSet(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end());
  atoms_.erase(std::unique(atoms_.begin(), atoms_.end()), atoms_.end());
}

bool AtomSet::contains(Atom a) const {
  return std::binary_search(atoms_.begin(), atoms_.end(), a);
}

void AtomSet::insert(Atom a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it == atoms_.end() || *it != a) atoms_.insert(it, a);
}

void AtomSet::erase(Atom a) {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), a);
  if (it != atoms_.end() && *it == a) atoms_.erase(it);
}

void AtomSet::insert_all(const AtomSet& other) {
  if (other.empty()) return;
  *this = *this | other;
}

bool AtomSet::is_subset_of(const AtomSet& other) const {
  return std::includes(other.atoms_.begin(), other.atoms_.end(), atoms_.begin(), atoms_.end());
}

bool AtomSet::intersects(const AtomSet& other) const {
  auto i = atoms_.begin();
  auto j = other.atoms_.begin();
  while (i != atoms_.end() && j != other.atoms_.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

AtomSet operator|(const AtomSet& l, const AtomSet& r) {
  AtomSet out;
  out.atoms_.reserve(l.size() + r.size());
  std::set_union(l.atoms_.begin(), l.atoms_.end(), r.atoms_.begin(), r.atoms_.end(),
                 std::back_inserter(out.atoms_));
  return out;
}

AtomSet operator&(const AtomSet& l, const AtomSet& r) {
  AtomSet out;
  std::set_intersection(l.atoms_.begin(), l.atoms_.end(), r.atoms_.begin(), r.atoms_.end(),
                        std::back_inserter(out.atoms_));
  return out;
}

AtomSet operator-(const AtomSet& l, const AtomSet& r) {
  AtomSet out;
  std::set_difference(l.atoms_.begin(), l.atoms_.end(), r.atoms_.begin(), r.atoms_.end(),
                      std::back_inserter(out.atoms_));
  return out;
}

std::string to_string(const AtomSet& s) {
  std::string out = "{";
  bool first = true;
  for (Atom a : s) {
    if (!first) out += ", ";
    out += a.name();
    first = false;
  }
  return out + "}";
}

// ---------------------------------------------------------------------------

Perm Perm::from_map(const std::map<Atom, Atom>& mapping) {
  std::map<Atom, Atom> moved;
  AtomSet domain, image;
  for (auto [from, to] : mapping) {
    domain.insert(from);
    image.insert(to);
    if (from != to) moved.emplace(from, to);
  }
  if (domain != image || image.size() != mapping.size())
    throw std::invalid_argument("permutation map is not a bijection on its domain");
  return Perm(std::move(moved));
}

Atom Perm::operator()(Atom a) const {
  auto it = moved_.find(a);
  return it == moved_.end() ? a : it->second;
}

Perm swap(Atom a, Atom b) {
  if (a == b) return Perm();
  return Perm(std::map<Atom, Atom>{{a, b}, {b, a}});
}

Perm compose(const Perm& p, const Perm& q) {
  std::map<Atom, Atom> moved;
  for (auto [from, to] : q.moved_) {
    Atom image = p(to);
    if (image != from) moved.emplace(from, image);
  }
  for (auto [from, to] : p.moved_) {
    if (q.moved_.count(from)) continue;
    moved.emplace(from, to);
  }
  return Perm(std::move(moved));
}

Perm inverse(const Perm& p) {
  std::map<Atom, Atom> moved;
  for (auto [from, to] : p.moved_) moved.emplace(to, from);
  return Perm(std::move(moved));
}

AtomSet perm_support(const Perm& p) {
  std::vector<Atom> atoms;
  atoms.reserve(p.moved().size());
  for (auto& [from, to] : p.moved()) atoms.push_back(from);
  return AtomSet(std::move(atoms));
}

AtomSet act(const Perm& p, const AtomSet& s) {
  if (p.is_identity()) return s;
  std::vector<Atom> atoms;
  atoms.reserve(s.size());
  for (Atom a : s) atoms.push_back(p(a));
  return AtomSet(std::move(atoms));
}

Atom fresh_atom(const AtomSet& avoid) {
  std::uint32_t candidate = 0;
  for (Atom a : avoid) {
    if (a.index() > candidate) break;
    if (a.index() == candidate) ++candidate;
  }
  return Atom(candidate);
}

}  // namespace infnom
