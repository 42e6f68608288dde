"""
Typed database interface over SQLite: values, connections, actions and plan execution.
"""
