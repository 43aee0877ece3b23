# !/usr/bin/python3
