"""
Reading the validity scores
===========================

The metrics all start from one contingency table. This walks through
a tiny example, including the two ways noise labels can be treated.
"""

from denmune import contingency, evaluate
from denmune.metrics import ari, f1_matched, homogeneity_completeness, nmi

pred = [0, 0, 0, 1, 1, -1, -2, 1]
truth = [0, 0, 1, 1, 1, 1, 0, 1]

# noise points become one-point clusters by default
tab = contingency(pred, truth)
print(tab.counts)
print("ARI", round(ari(tab), 4), " NMI", round(nmi(tab), 4))
print("homogeneity / completeness", homogeneity_completeness(tab))
print("matched F1 (hungarian)", f1_matched(tab))
print("matched F1 (greedy)   ", f1_matched(tab, "greedy_majority"))

###############################################################################
# Dropping noise points instead scores only what was clustered.
print(evaluate(pred, truth, policy="exclude_noise"))
