# coding: utf-8

# # Climbing to the greedy tree by switches
#
# Three local moves keep the degree sequence fixed: swapping the pieces
# hanging off two path vertices, swapping two tails, and moving branches
# from a busy vertex to a quieter one. The switching algorithm applies them
# along leaf-to-leaf paths while the count goes up.

# In[1]:

import random

from subtreemax import (
    build_greedy,
    count_subtrees,
    degree_sequence_of,
    run_switching_algorithm,
    serialize_tree,
)
from subtreemax.oracle import prufer_decode


# Start from a random tree with 24 vertices.

# In[2]:

rng = random.Random(7)
n = 24
t = prufer_decode([rng.randrange(n) for _ in range(n - 2)], n)
ds = degree_sequence_of(t)
print(ds, count_subtrees(t))


# In[3]:

out, trace = run_switching_algorithm(t)
print(len(trace), "switches")
for step in trace.steps[:8]:
    print(step.phase, step.switch.kind, step.count_before, "->", step.count_after)


# The final tree has the same degrees and the greedy count.

# In[4]:

print(degree_sequence_of(out) == ds)
print(trace.final_count, count_subtrees(build_greedy(ds).tree))


# Traces serialise to JSON with counts as strings.

# In[5]:

print(trace.to_json()[:2])
print(serialize_tree(out).splitlines()[:5])
