# coding: utf-8

# # Distances from the greedy tree, and some open questions
#
# Going the other way, every tree of a family can be reached from the
# greedy tree by count-decreasing switches. The k-th best tree should need
# at most k-1 of them.

# In[1]:

from subtreemax import DegreeSequence
from subtreemax.explorer import (
    check_conjecture,
    check_tail_dominance,
    distances_from_greedy,
    probe_switch_ordering,
    rank_family,
)


# In[2]:

ds = DegreeSequence.parse("4,3,3,2,2")
ranked = rank_family(ds)
dist = distances_from_greedy(ds)
for e in ranked.entries:
    print(e.rank, e.count, dist[e.code])


# On the greedy tree, the cheapest way to lose subtrees is always a tail
# switch. With branch moves restricted to the largest branches this holds;
# allowing any branch to move breaks it.

# In[3]:

seq = DegreeSequence.parse("4,3,3,3")
print(check_tail_dominance(seq).status)
r = check_tail_dominance(seq, inverse_moves=True)
print(r.status, r.counterexamples[0].witness["decrease"], r.summary["smallest_tail_decrease"])


# The remaining checkers explore questions with no known answer. Their
# reports are plain JSON.

# In[4]:

pool = [DegreeSequence.parse(s) for s in ("3,3,2", "4,3,2", "3,3,3,2")]
print(check_conjecture(pool).to_json())
for problem in (1, 2, 3):
    print(probe_switch_ordering(DegreeSequence.parse("3,3,3,3"), problem).to_json()[:120])
