# FILE: switchcert/config/__init__.py
