package com.urcodebin.api.service;

import java.util.List;
import java.util.Optional;
import java.util.UUID;

import com.urcodebin.api.model.Paste;
import com.urcodebin.api.model.PasteExpiration;
import com.urcodebin.api.model.PasteSyntax;

public interface PasteService {

    Optional<Paste> findPasteById(UUID id);

    List<Paste> getListOfPublicPastes(int limit, String title, PasteSyntax syntax);

    Paste addNewPaste(String title, String code, PasteSyntax syntax, PasteExpiration expiration, boolean visible);

    boolean deletePaste(UUID id);
}
