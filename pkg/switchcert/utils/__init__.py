# FILE: switchcert/utils/__init__.py
