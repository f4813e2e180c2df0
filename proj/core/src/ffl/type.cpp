#include "mrv/ffl/term.hpp"

namespace mrv::ffl {

namespace {
TypePtr leaf(TypeKind k) { return std::make_shared<Type>(Type{k, nullptr, nullptr}); }
}  // namespace

TypePtr tInt() {
  static TypePtr t = leaf(TypeKind::Int);
  return t;
}
TypePtr tRat() {
  static TypePtr t = leaf(TypeKind::Rat);
  return t;
}
TypePtr tBool() {
  static TypePtr t = leaf(TypeKind::Bool);
  return t;
}
TypePtr tUnit() {
  static TypePtr t = leaf(TypeKind::Unit);
  return t;
}
TypePtr tArray(TypePtr elem) {
  return std::make_shared<Type>(Type{TypeKind::Array, std::move(elem), nullptr});
}
TypePtr tProd(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Prod, std::move(a), std::move(b)});
}
TypePtr tSum(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Sum, std::move(a), std::move(b)});
}
TypePtr tArrow(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Arrow, std::move(a), std::move(b)});
}

bool typeEqual(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  if ((a->a == nullptr) != (b->a == nullptr)) return false;
  if ((a->b == nullptr) != (b->b == nullptr)) return false;
  if (a->a && !typeEqual(a->a, b->a)) return false;
  if (a->b && !typeEqual(a->b, b->b)) return false;
  return true;
}

bool firstOrder(const TypePtr& t) {
  if (!t) return false;
  if (t->kind == TypeKind::Arrow) return false;
  if (t->a && !firstOrder(t->a)) return false;
  if (t->b && !firstOrder(t->b)) return false;
  return true;
}

std::string showType(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case TypeKind::Int: return "Int";
    case TypeKind::Rat: return "Rat";
    case TypeKind::Bool: return "Bool";
    case TypeKind::Unit: return "Unit";
    case TypeKind::Array: return "[" + showType(t->a) + "]";
    case TypeKind::Prod: {
      std::string l = showType(t->a);
      if (t->a->kind == TypeKind::Prod || t->a->kind == TypeKind::Sum ||
          t->a->kind == TypeKind::Arrow)
        l = "(" + l + ")";
      std::string r = showType(t->b);
      if (t->b->kind == TypeKind::Sum || t->b->kind == TypeKind::Arrow) r = "(" + r + ")";
      return l + " * " + r;
    }
    case TypeKind::Sum: {
      std::string l = showType(t->a);
      if (t->a->kind == TypeKind::Sum || t->a->kind == TypeKind::Arrow) l = "(" + l + ")";
      std::string r = showType(t->b);
      if (t->b->kind == TypeKind::Arrow) r = "(" + r + ")";
      return l + " + " + r;
    }
    case TypeKind::Arrow: {
      std::string l = showType(t->a);
      if (t->a->kind == TypeKind::Arrow) l = "(" + l + ")";
      return l + " -> " + showType(t->b);
    }
  }
  return "?";
}

}  // namespace mrv::ffl
