"""Logical structures explorer: Tarski and Lindenbaum types of finite consequence relations"""

__version__ = "1.0.0"
