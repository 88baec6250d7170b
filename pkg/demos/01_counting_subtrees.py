# coding: utf-8

# # Counting subtrees
#
# A subtree here is any nonempty connected set of vertices. This notebook
# counts them for a few small trees and checks the fast count against
# brute force.

# In[1]:

from subtreemax import count_rooted, count_subtrees, oracle_count, parse_tree, path_tree, star_tree


# A path on n vertices has one subtree per interval, so n(n+1)/2 in total.

# In[2]:

for n in range(1, 8):
    print(n, count_subtrees(path_tree(n)), n * (n + 1) // 2)


# A star with k leaves: any subset of leaves together with the centre, plus the k lone leaves.

# In[3]:

for k in range(1, 6):
    print(k, count_subtrees(star_tree(k)), 2 ** k + k)


# Trees can also be read from an edge list, one pair per line.

# In[4]:

doc = """
# a small caterpillar
0 1
1 2
2 3
1 4
2 5
"""
t = parse_tree(doc)
print(t.vertex_count, count_subtrees(t))
print([count_rooted(t, v) for v in range(t.vertex_count)])


# The brute-force oracle walks every vertex subset and keeps the connected
# ones. It is exponential but makes an independent reference.

# In[5]:

print(oracle_count(t) == count_subtrees(t))


# The dynamic program works on large trees too; counts are exact Python ints.

# In[6]:

big = path_tree(2000)
print(count_subtrees(big))
