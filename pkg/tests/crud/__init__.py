# -*- coding: utf-8 -*-
"""
CRUD 操作模块测试的初始化文件。
(Initialization file for tests of CRUD operation modules.)
"""
