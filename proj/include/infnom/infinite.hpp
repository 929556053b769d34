#pragma once

// Infinitary terms as lazily unfolded coalgebras.

#include <cstddef>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "infnom/atoms.hpp"
#include "infnom/errors.hpp"
#include "infnom/signature.hpp"

namespace infnom {

struct VarLayer {
  Atom atom;
  friend bool operator==(const VarLayer&, const VarLayer&) = default;
};

template <class R>
struct LayerArg {
  std::vector<Atom> binders;
  R body;
};

template <class R>
struct OpLayer {
  std::string name;
  std::vector<LayerArg<R>> args;
};

/// One step of unfolding: a variable, or an operation over children of type R.
template <class R>
using Layer = std::variant<VarLayer, OpLayer<R>>;

template <class R>
Layer<R> var_layer(Atom a) {
  return VarLayer{a};
}

template <class R>
Layer<R> op_layer(std::string name, std::vector<LayerArg<R>> args = {}) {
  return OpLayer<R>{std::move(name), std::move(args)};
}

/// Replaces every child of a layer by f(child).
template <class R, class F>
auto map_layer(const Layer<R>& l, F&& f) -> Layer<std::invoke_result_t<F&, const R&>> {
  using S = std::invoke_result_t<F&, const R&>;
  if (auto v = std::get_if<VarLayer>(&l)) return *v;
  const auto& op = std::get<OpLayer<R>>(l);
  OpLayer<S> out{op.name, {}};
  out.args.reserve(op.args.size());
  for (const auto& a : op.args) out.args.push_back({a.binders, f(a.body)});
  return out;
}

class InfTerm;

/// Lazily unfolded infinitary term with a declared finite support.
///
/// The declared support is a superset of the free variables. It is checked
/// as layers are observed: a variable layer outside it, or a child claiming
/// more than the parent's declared support plus the binders in between,
/// raises SupportViolation.
class InfTerm {
 public:
  class Node {
   public:
    explicit Node(AtomSet declared) : declared_(std::move(declared)) {}
    virtual ~Node() = default;
    Node(const Node&) = delete;
    Node& operator=(const Node&) = delete;

    const AtomSet& declared() const { return declared_; }
    /// Memoized and checked; concurrent callers see the same layer.
    const Layer<InfTerm>& layer() const;

   protected:
    virtual Layer<InfTerm> compute() const = 0;

   private:
    AtomSet declared_;
    mutable std::once_flag once_;
    mutable std::optional<Layer<InfTerm>> cache_;
  };

  explicit InfTerm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  const AtomSet& declared_support() const { return node_->declared(); }
  const Layer<InfTerm>& unfold() const { return node_->layer(); }
  const Node& node() const { return *node_; }
  const std::shared_ptr<const Node>& node_ptr() const { return node_; }
  bool is_rational() const;

 private:
  std::shared_ptr<const Node> node_;
};

Layer<InfTerm> unfold_step(const InfTerm& t);

/// Equation system over state indices; the term is the unfolding from root.
struct RationalSystem {
  std::vector<Layer<std::size_t>> states;
  std::size_t root = 0;
};

/// Throws std::invalid_argument on dangling state indices. The declared
/// support is the exact free-variable set.
InfTerm rational(RationalSystem system);
InfTerm embed(const RawTerm& t);
/// The finite term unfolded from a rational term without cycles reachable
/// from its root, or nullopt.
std::optional<RawTerm> to_finite(const InfTerm& t);

namespace detail {

template <class State>
class ProducerNode final : public InfTerm::Node {
 public:
  using Step = std::function<Layer<State>(const State&)>;

  ProducerNode(State state, std::shared_ptr<const Step> step, AtomSet declared)
      : Node(std::move(declared)), state_(std::move(state)), step_(std::move(step)) {}

 protected:
  Layer<InfTerm> compute() const override {
    Layer<State> l = (*step_)(state_);
    if (auto v = std::get_if<VarLayer>(&l)) return *v;
    auto& op = std::get<OpLayer<State>>(l);
    OpLayer<InfTerm> out{std::move(op.name), {}};
    out.args.reserve(op.args.size());
    for (auto& a : op.args) {
      AtomSet child = declared() | AtomSet(a.binders);
      auto node = std::make_shared<ProducerNode>(std::move(a.body), step_, std::move(child));
      out.args.push_back({std::move(a.binders), InfTerm(std::move(node))});
    }
    return out;
  }

 private:
  State state_;
  std::shared_ptr<const Step> step_;
};

}  // namespace detail

/// Corecursive term generated from `seed` by a deterministic `step`.
/// Children inherit the declared support extended by their binders.
template <class State>
InfTerm make_producer(State seed, std::function<Layer<State>(const State&)> step,
                      AtomSet declared) {
  using Node = detail::ProducerNode<State>;
  auto shared = std::make_shared<const typename Node::Step>(std::move(step));
  return InfTerm(std::make_shared<Node>(std::move(seed), std::move(shared), std::move(declared)));
}

InfTerm act_inf(const Perm& p, const InfTerm& t);
inline InfTerm act(const Perm& p, const InfTerm& t) { return act_inf(p, t); }

TruncTerm truncate(const InfTerm& t, std::size_t depth);
bool alpha_eq_at(const InfTerm& t, const InfTerm& s, std::size_t depth);

struct DistanceBound {
  enum class Kind { Exact, AtMost };
  Kind kind;
  Dyadic value;

  bool exact() const { return kind == Kind::Exact; }
  std::string str() const;
  friend bool operator==(const DistanceBound&, const DistanceBound&) = default;
};

/// Throws std::invalid_argument when cap == 0.
DistanceBound dist(const InfTerm& t, const InfTerm& s, std::size_t cap);
DistanceBound dist_alpha(const InfTerm& t, const InfTerm& s, std::size_t cap);

/// Exact free variables of a rational term. Producers are accepted only
/// when their declared support is empty; otherwise NotRational.
AtomSet fv_exact(const InfTerm& t);
AtomSet fv_at(const InfTerm& t, std::size_t depth);

/// n -> alpha-class of a depth-n truncation.
using ClassChain = std::function<AlphaClass(std::size_t)>;

ClassChain truncation_chain(const InfTerm& t);

struct LimitOptions {
  /// Any class in the probed segment with more free atoms is rejected.
  std::size_t max_support = 256;
  /// The support at depth n must equal the support at depth n + window.
  std::size_t window = 2;
};

/// A safe raw truncation whose class is chain(depth). Binder positions are
/// numbered level by level, left to right, and receive distinct fresh
/// atoms avoiding the chain's support, so consecutive depths extend.
TruncTerm represent_limit(const ClassChain& chain, std::size_t depth, LimitOptions options = {});

}  // namespace infnom
