# coding: utf-8

# # Greedy trees
#
# Fix the degrees of the internal vertices. Among all trees with those
# degrees, the one built greedily (largest degrees first, breadth first from
# the root) has the most subtrees. Here we build a few and compare against
# the whole family.

# In[1]:

from subtreemax import DegreeSequence, build_greedy, count_subtrees, enumerate_family, is_greedy
from subtreemax.explorer import rank_family


# In[2]:

ds = DegreeSequence.parse("4,4,4,3,3,3,3,3,3,3,2,2")
g = build_greedy(ds)
print(ds.vertex_count, "vertices, root", g.root)
print("subtrees:", count_subtrees(g.tree))


# Degrees level by level, in the order they were placed.

# In[3]:

for level, degrees in enumerate(g.level_degrees):
    print(level, degrees)


# A smaller sequence can be enumerated completely and ranked.

# In[4]:

ranked = rank_family(DegreeSequence.parse("4,3,3,2"))
for e in ranked.entries:
    print(e.rank, e.count, "greedy" if is_greedy(e.tree).ok else "")


# The family listing agrees with the ranking.

# In[5]:

family = enumerate_family(DegreeSequence.parse("4,3,3,2"))
print(len(family), len(ranked))
