# -*- coding: utf-8 -*-
"""
数据模型测试的初始化文件。
(Initialization file for tests of data models.)
"""
