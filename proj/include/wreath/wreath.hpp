#ifndef WREATH_WREATH_HPP
#define WREATH_WREATH_HPP

#include "wreath/builtin.hpp"
#include "wreath/dirichlet.hpp"
#include "wreath/error.hpp"
#include "wreath/finite_graph.hpp"
#include "wreath/gadget.hpp"
#include "wreath/lamplighter.hpp"
#include "wreath/oracle.hpp"
#include "wreath/ray_families.hpp"
#include "wreath/rays.hpp"
#include "wreath/tree_walk.hpp"
#include "wreath/vertex_id.hpp"

#endif  // WREATH_WREATH_HPP
