"""Random structure corpora checked against the theorem registry"""
