#pragma once

#include "qheap/binary_heap.hpp"
#include "qheap/config.hpp"
#include "qheap/dispatch.hpp"
#include "qheap/error.hpp"
#include "qheap/key.hpp"
#include "qheap/original_quickheap.hpp"
#include "qheap/queue.hpp"
#include "qheap/quickheap.hpp"

#include "qheap/bench/counts.hpp"
#include "qheap/bench/csv.hpp"
#include "qheap/bench/sweep.hpp"
#include "qheap/bench/workload.hpp"

#include "qheap/graph/algorithms.hpp"
#include "qheap/graph/dimacs.hpp"
#include "qheap/graph/graph.hpp"
#include "qheap/graph/packing.hpp"
#include "qheap/graph/random_graph.hpp"
